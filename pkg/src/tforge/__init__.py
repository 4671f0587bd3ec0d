"""tforge: dessins d'enfants, Beauville surfaces and Belyi maps in exact arithmetic."""

__version__ = "0.1.0"
