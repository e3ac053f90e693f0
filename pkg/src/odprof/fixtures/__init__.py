"""Tables from the order-dependency literature, shipped as CSV.

* ``taxes``: employee tax records (six rows, nine columns).
* ``incompleteness``: four rows on which ``<A,B> ~ <A,C>`` holds although
  ``<B> ~ <C>``, ``<A,B> ~ <C>`` and ``<B> ~ <A,C>`` do not.
* ``bug7``: seven rows used to check a set-based discovery implementation.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from odprof.loader import load_csv
from odprof.model import Table

NAMES = ("taxes", "incompleteness", "bug7")


def path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(NAMES)}")
    return Path(str(resources.files(__name__) / f"{name}.csv"))


def load(name: str) -> Table:
    return load_csv(path(name))
