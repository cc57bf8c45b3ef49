from pathlib import Path
from typing import (
    List,
    Optional
)

import typer
from typing_extensions import Annotated

from airytools.boundary import BoundaryType
from airytools.exception import DomainError

OutOption = Annotated[Optional[Path], typer.Option("--out", help="Output file; standard output when omitted")]


def parse_floats(text: str, count: Optional[int] = None, name: str = "value") -> List[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"{name} must be comma separated numbers, got '{text}'")
    if count is not None and len(values) != count:
        raise typer.BadParameter(f"{name} needs {count} comma separated numbers, got '{text}'")
    if not values:
        raise typer.BadParameter(f"{name} is empty")
    return values


def parse_boundary(flag: str, allowed: str = "dnrt") -> BoundaryType:
    if len(flag) != 1 or flag.lower() not in allowed:
        raise typer.BadParameter(f"boundary condition must be one of {', '.join(allowed)}, got '{flag}'")
    try:
        return BoundaryType.from_flag(flag)
    except DomainError as e:
        raise typer.BadParameter(str(e))
