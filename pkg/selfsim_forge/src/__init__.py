"""
Self-Similar Forge - decision procedures for self-similar group actions on graphs.
"""

__version__ = "0.1.0"
