"""Process entry point for the isoforms command line."""

import logging
import sys

from pydantic import ValidationError

from isoforms.config.settings import get_settings
from isoforms.controller.cli_controller import handle_exception, run


def main() -> None:
    try:
        settings = get_settings()
    except ValidationError as exc:
        sys.exit(handle_exception(exc))
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("isoforms.main").info(f"Tolerances: {settings.tolerance()}")
    sys.exit(run(settings=settings))


if __name__ == "__main__":
    main()
