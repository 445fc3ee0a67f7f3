"""ordarena: executable back-and-forth games on ordinals, dimension groups
and toy metric structures, with exact Bratteli diagram arithmetic."""

__version__ = "0.1.0"
