"""Report assembly, document loading and the CLI runner."""
