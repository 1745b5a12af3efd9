import json
from pathlib import Path
from typing import Optional

import click
import pandas as pd

from gfclt.enums import OutFormat

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def load_schema(name: str) -> dict:
    with open(SCHEMA_DIR / f"{name}.json") as f:
        return json.load(f)


def render(report: dict, frame: Optional[pd.DataFrame], out_format: OutFormat) -> str:
    if out_format is OutFormat.csv:
        if frame is None:
            raise click.UsageError("This command has no CSV form, use --format json")
        return frame.to_csv(index=False)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_output(text: str, out_path: Optional[Path] = None):
    """Reports go to ``out_path`` when given, else to stdout"""
    if out_path is None:
        click.echo(text, nl=False)
        return
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(text)
