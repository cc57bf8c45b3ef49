import json
from pathlib import Path

import typer
from rich.console import Console
from rich.table import Table
from typing_extensions import Annotated

from airytools.exception import handle_exceptions

app = typer.Typer()
console = Console()


def load_config(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as e:
        raise typer.BadParameter(f"config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise typer.BadParameter(f"config file {path} must hold a JSON object")
    return data


def _flatten(data: dict, prefix: str = ""):
    for key, value in data.items():
        name = f"{prefix} {key}".strip()
        if isinstance(value, dict):
            yield from _flatten(value, name)
        else:
            yield name, value


@app.command(name='show', help='Show the option defaults a config file provides')
@handle_exceptions()
def show(path: Annotated[Path, typer.Argument(help="JSON config file", exists=True, dir_okay=False)]):
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Command", style="dim")
    table.add_column("Option", style="dim")
    table.add_column("Default")
    for name, value in _flatten(load_config(path)):
        command, _, option = name.rpartition(" ")
        table.add_row(command or "(root)", option, json.dumps(value))
    console.print(table)
