"""Bundled data files."""

from importlib.resources import files


def spx_option_chain_path():
    """S&P 500 one-year option quotes of 2 February 2022 (spot 4576.8)."""
    return files(__name__) / "spx_options_2022-02-02.csv"
