from .cparse import IncludeDirective, ParseResult, RawElement, parse_text
from .model import (
    CodeElement,
    IngestConfig,
    ProjectModel,
    SourceFile,
    UsageIndex,
    build_usage_index,
    count_lines,
    parse_header,
    resolve_includes,
    scan_project,
    transitive_includes,
)

__all__ = [
    "CodeElement", "IncludeDirective", "IngestConfig", "ParseResult", "ProjectModel",
    "RawElement", "SourceFile", "UsageIndex", "build_usage_index", "count_lines",
    "parse_header", "parse_text", "resolve_includes", "scan_project", "transitive_includes",
]
