"""Command-line front end: file formats, subcommands, and repro fixtures."""
