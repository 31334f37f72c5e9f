"""Hyperlinking numbers, piercings and representation traces behind a quantized area operator."""
__version__ = "0.1.0"
