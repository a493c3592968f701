"""Configuration loader that reads from .env and key=value run files."""

import os
import sys
from pathlib import Path
from typing import Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import ValidationError

from models.config_models import Settings
from utils.errors import DomainError


def load_settings() -> Settings:
    """
    Load and validate process settings from environment variables.

    Reads from .env file in the project root (existing environment variables
    win) and validates with the Settings model.

    Returns:
        Settings: Validated settings object

    Raises:
        SystemExit: With code 2 if a variable is present but invalid
    """
    env_path = Path(__file__).parent.parent / ".env"
    load_dotenv(dotenv_path=env_path)

    try:
        return Settings(
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            output_dir=os.getenv("ANYTIME_PPM_OUTPUT_DIR") or None,
            workers=os.getenv("ANYTIME_PPM_WORKERS", "1"),
        )

    except ValidationError as e:
        print("❌ Configuration validation failed:", file=sys.stderr)
        print("\nPlease check your environment / .env file. Invalid fields:", file=sys.stderr)

        for error in e.errors():
            field_path = " → ".join(str(x) for x in error["loc"])
            message = error["msg"]
            print(f"  • {field_path}: {message}", file=sys.stderr)

        sys.exit(2)


def load_run_file(path: Optional[str]) -> dict[str, str]:
    """
    Read an optional key=value run file.

    Keys use the long flag names with dashes or underscores
    (``trials=100000`` or ``rate-fraction=0.5``); values are kept as strings
    and parsed by the CLI exactly like flag values.

    Args:
        path: File path, or None for no file

    Returns:
        Mapping of normalized keys (underscores) to raw string values

    Raises:
        DomainError: If the file does not exist
    """
    if path is None:
        return {}
    file_path = Path(path)
    if not file_path.is_file():
        raise DomainError(f"Config file not found: {path}")

    values = dotenv_values(dotenv_path=file_path)
    return {
        key.strip().lower().replace("-", "_"): value
        for key, value in values.items()
        if value is not None
    }
