import typer
from typing_extensions import Annotated

from airytools.airy import eval_pair
from airytools.cli.common import (
    OutOption,
    parse_floats
)
from airytools.exception import handle_exceptions
from airytools.export import write_json

app = typer.Typer()


@app.command(name='eval', help='Evaluate Ai and Ai\' at a complex point')
@handle_exceptions()
def evaluate(
    z: Annotated[str, typer.Option("--z", help="Point as RE,IM")],
    out: OutOption = None
):
    re, im = parse_floats(z, 2, "--z")
    pair = eval_pair(complex(re, im))
    write_json(dict(z=[re, im], **pair.as_dict()), out)
