"""scipress: analysis and evaluation workbench for paired scientific-article /
press-release corpora."""

__version__ = "0.1.0"
