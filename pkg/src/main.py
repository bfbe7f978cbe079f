import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.cli.parser import parse_config
from src.cli.runner import EXIT_ERROR, run
from src.config.settings import get_settings
from src.exceptions.cli import CliUsageError


logger = logging.getLogger(__name__)


def _field_diagnostic(error: ValidationError) -> str:
    first = error.errors()[0]
    field = ".".join(str(part) for part in first["loc"]) or "config"
    return f"error: {field}: {first['msg']}"


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    try:
        config = parse_config(argv, settings)
    except CliUsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValidationError as e:
        print(_field_diagnostic(e), file=sys.stderr)
        return EXIT_ERROR

    logging.basicConfig(
        level=config.log_level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logger.info("Command line parsed")

    code, output = run(config, settings)
    print(output, file=sys.stderr if output.startswith("error:") else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
