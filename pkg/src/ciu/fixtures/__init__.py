"""Bundled input documents."""

from importlib import resources

NAMES = ("small", "example", "remark", "propgen", "corollary", "inverse", "identities")


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.ciu").read_text(encoding="utf-8")
