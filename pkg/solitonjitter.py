#!/usr/bin/python3

import asyncio
import sys

from dotenv import load_dotenv

from src.app.simulation_app import SolitonJitterApp
from src.config import get_config
from src.errors import EXIT_OK, exit_code_for
from src.logger import log
from src.parse_args import command_line_parser

# Load environment variables
load_dotenv()


async def main(argv: list[str] | None = None) -> int:
    args = command_line_parser().parse_args(argv)
    # Get centralized configuration
    config = get_config()

    log.set_timezone(config.log_timezone)
    log.set_log_path(config.log_path)

    # Sweeps can run for hours and keep a log file, other commands log to console only
    if args.command != "sweep":
        log.setup_console_only()
    log.set_verbose(args.verbose)

    log.info("Properties:")
    for key, value in config.get_env_info().items():
        log.info(f"{key} = {value}")
    log.info("")
    log.info(f"Command line arguments: {args.command}")
    log.info("")

    app = SolitonJitterApp(config, args)

    match args.command:
        case "run":
            app.run()
        case "sweep":
            await app.sweep()
        case "compare-analytic":
            app.compare_analytic()
        case _:
            log.error(f"Unknown command: {args.command}")
            return 1
    return EXIT_OK


def run() -> None:
    log.info("⮦ Started SolitonJitter")
    code = EXIT_OK
    try:
        code = asyncio.run(main())
    except KeyboardInterrupt:
        log.info("Received KeyboardInterrupt, shutting down...")
    except Exception as e:
        code = exit_code_for(e)
        log.error(f"{type(e).__name__}: {e}")
    finally:
        log.info("↳ Finished SolitonJitter")
    sys.exit(code)


if __name__ == "__main__":
    run()
