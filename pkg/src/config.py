import os
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

from src.errors import ConfigError

load_dotenv()

# Configuration
CAP_BOXES = int(os.environ.get('KOSTKA_CAP_BOXES', 30))
CAP_IRREDUCIBLE = int(os.environ.get('KOSTKA_CAP_IRREDUCIBLE', 40))
CAP_WIDTH = int(os.environ.get('KOSTKA_CAP_WIDTH', 24))
RANK_CAP = int(os.environ.get('KOSTKA_RANK_CAP', 6))
FIXTURES_DIR = os.environ.get('KOSTKA_FIXTURES', 'data/catalogs')
JOBS = int(os.environ.get('KOSTKA_JOBS', 1))
OUTPUT_FORMAT = os.environ.get('KOSTKA_FORMAT', 'text')
LOG_LEVEL = os.environ.get('KOSTKA_LOG_LEVEL', 'WARNING')

FORMATS = ("text", "json", "dot")


@dataclass(frozen=True)
class RunConfig:
    """Settings for one CLI invocation: flags layered over the environment."""

    command: str
    output_format: str = OUTPUT_FORMAT
    cap_boxes: int = CAP_BOXES
    cap_irreducible: int = CAP_IRREDUCIBLE
    cap_width: int = CAP_WIDTH
    rank_cap: int = RANK_CAP
    fixtures: str = FIXTURES_DIR
    jobs: int = JOBS
    rank: Optional[int] = None
    inputs: tuple[str, ...] = ()
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rank is not None and self.rank <= 0:
            raise ConfigError(f"rank must be positive, got {self.rank}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}, expected one of {FORMATS}")
        for name in ("cap_boxes", "cap_irreducible", "cap_width", "rank_cap", "jobs"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
