"""
Artifact writers.

JSON keeps the key order of the models that produced it, so identical inputs
give byte-identical files. CSV goes through pandas; every numeric column is
written twice, exact text plus a decimal approximation.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

import pandas as pd

from .seqspace import NormValue
from .utils import approx_text, calculate_file_hash, exact_text

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def dump_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_text(text: str, path: PathLike) -> str:
    """
    Write text to path, creating parent directories.

    Returns:
        SHA-256 digest of the written bytes
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    content = text.encode("utf-8")
    path.write_bytes(content)
    digest = calculate_file_hash(content)
    logger.info(f"Wrote {path} ({len(content)} bytes, sha256 {digest})")
    return digest


def write_json(data, path: PathLike) -> str:
    return write_text(dump_json(data), path)


def norms_frame(norms: Sequence[NormValue]) -> pd.DataFrame:
    """One row per step: j, norm kind, exact value, approximation"""
    return pd.DataFrame({
        "j": range(len(norms)),
        "norm": [str(v.kind) for v in norms],
        "exact": [exact_text(v) for v in norms],
        "approx": [approx_text(v) for v in norms],
    })


def density_frame(profile: Sequence[Fraction]) -> pd.DataFrame:
    """Running density |A ∩ [0, n]|/(n+1) per n"""
    return pd.DataFrame({
        "n": range(len(profile)),
        "density": [exact_text(d) for d in profile],
        "approx": [approx_text(d) for d in profile],
    })


def banach_frame(rows: Iterable[Tuple[int, int, Fraction]]) -> pd.DataFrame:
    """Columns N, count, ratio (exact), ratio_approx"""
    rows = list(rows)
    return pd.DataFrame({
        "N": [r[0] for r in rows],
        "count": [r[1] for r in rows],
        "ratio": [exact_text(r[2]) for r in rows],
        "ratio_approx": [approx_text(r[2]) for r in rows],
    })


def write_csv(frame: pd.DataFrame, path: Optional[PathLike] = None) -> str:
    """
    Write a frame as CSV.

    Returns:
        SHA-256 digest of the file, or the CSV text when path is None
    """
    text = frame.to_csv(index=False, lineterminator="\n")
    if path is None:
        return text
    return write_text(text, path)
