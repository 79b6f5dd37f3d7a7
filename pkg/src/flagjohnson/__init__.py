"""Full-flag Johnson graphs, their Cayley and Schreier presentations, and
numerical checks of their spectral-gap (Aldous-type) properties."""

__version__ = "0.1.0"
