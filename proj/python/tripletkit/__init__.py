"""Python bindings for the tripletkit dataset pipeline and scorer."""

import json

from . import _core
from ._core import EncodeError, FormatError, krippendorff_alpha, critic_metrics

__all__ = [
    "EncodeError",
    "FormatError",
    "critic_metrics",
    "decode",
    "encode_rc",
    "encode_re",
    "krippendorff_alpha",
    "run_pipeline",
    "score",
]


def encode_re(record, typed=True):
    """Linearizes a dataset record (dict) into an input/target sample."""
    return json.loads(_core.encode_re(json.dumps(record), typed))


def encode_rc(record, index, typed=True):
    return json.loads(_core.encode_rc(json.dumps(record), index, typed))


def decode(target, typed=True):
    """Returns (triplets, diagnostics); malformed fragments are dropped."""
    return _core.decode(target, typed)


def score(preds, golds, mode="strict"):
    """Scores lists of prediction and gold records (dicts)."""
    return json.loads(
        _core.score([json.dumps(r) for r in preds], [json.dumps(r) for r in golds], mode)
    )


def run_pipeline(config_path, output_dir=""):
    result = _core.run_pipeline(str(config_path), str(output_dir))
    result["manifest"] = [json.loads(line) for line in result["manifest"]]
    return result
