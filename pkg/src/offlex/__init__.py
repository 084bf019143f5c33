"""Lexical offensive-language classifiers, a black-list rule system and their evaluation."""

__version__ = "0.1.0"
