"""Command-line front end."""

from .config import RunConfig, load_config, parse_height_bound
from .main import build_parser, main
from .mapdoc import MapDocument, load_map_document, parse_map_document, to_document
from .report import Report

__all__ = ["MapDocument", "Report", "RunConfig", "build_parser", "load_config",
           "load_map_document", "main", "parse_height_bound", "parse_map_document",
           "to_document"]
