"""Certificate files shipped with the package."""
from pathlib import Path

DIRECTORY = Path(__file__).resolve().parent


def path(name: str) -> Path:
    """Location of a shipped certificate, e.g. ``path("pascal_guarded")``."""
    p = DIRECTORY / (name if name.endswith(".cert") else f"{name}.cert")
    if not p.is_file():
        raise FileNotFoundError(name)
    return p


def names() -> list:
    return sorted(p.stem for p in DIRECTORY.glob("*.cert"))
