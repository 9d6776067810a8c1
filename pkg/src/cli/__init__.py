from src.cli.commands import CliConfig, build_config, build_parser, load_tree_file, main, run

__all__ = ["CliConfig", "build_config", "build_parser", "load_tree_file", "main", "run"]
