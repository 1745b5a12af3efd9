import importlib.metadata
from pathlib import Path

import yaml

from .environment import Environment

# import package version from root 'pyproject.toml' file
try:
    __version__ = importlib.metadata.version("gfclt")
except importlib.metadata.PackageNotFoundError:
    __version__ = "0.0.0+local"

# Numerical defaults shared by every module
config_path = Path(__file__).resolve().parent / "config.yaml"
with open(config_path) as f:
    config = yaml.load(f, Loader=yaml.FullLoader)

# initialize runtime environment object for easy access
env = Environment()
