"""Price-band SVM and discount significance, as Python calls.

Documents come back as plain dicts; errors raise SalesigError, whose
``exit_code`` matches the command-line tool.
"""

import json

from . import _core
from ._core import SalesigError, fold_index

__all__ = ["SalesigError", "analyze", "assign_band", "band_spec", "clean_report",
           "fold_index", "stats", "synth", "train"]


def _bands(bands):
    return None if bands is None else json.dumps(bands)


def band_spec(bands=None):
    return json.loads(_core.band_spec(_bands(bands)))


def assign_band(price, bands=None):
    return _core.assign_band(price, _bands(bands))


def clean_report(catalog):
    return json.loads(_core.clean_report(str(catalog)))


def stats(catalog, bands=None):
    return json.loads(_core.stats(str(catalog), _bands(bands)))


def train(catalog, model, kernel="rbf", c=1.0, train_fraction=0.8, seed=42):
    return json.loads(_core.train(str(catalog), str(model), kernel, c, train_fraction, seed))


def analyze(model, sale, catalog, k=0.5):
    return json.loads(_core.analyze(str(model), str(sale), str(catalog), k))


def synth(directory, seed=42):
    """Writes nonsale.csv, sale.csv and raw.csv into directory."""
    import pathlib

    out = pathlib.Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in zip(("nonsale.csv", "sale.csv", "raw.csv"), _core.synth_csv(seed)):
        (out / name).write_text(text, encoding="utf-8")
    return out
