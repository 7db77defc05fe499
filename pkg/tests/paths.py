"""Shared locations of the repo's data files."""

from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
SEED_GWDL = REPO_ROOT / "lexicon" / "seed.gwdl"
FREQ_TSV = REPO_ROOT / "lexicon" / "frequencies.tsv"
