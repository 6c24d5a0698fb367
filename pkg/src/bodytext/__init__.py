"""Body-text extraction from HTML replicas of PDF documents.

The high-level entry points are :func:`bodytext.pipeline.extract` (strings)
and :func:`bodytext.pipeline.extract_paths` (files); the stages they wire
together live in the sibling modules and can be used independently.
"""

from .assembly import BodyText, emit, segment_sentences
from .errors import (BodyTextError, FormatError, PipelineError,
                     ReplicaFormatError, ReplicaParseError)
from .evaluate import EvalReport, aggregate, score
from .highlight import (HighlightSpan, build_stream, inject_color,
                        inject_colors, locate_sentence, strip_highlights)
from .metrics import DocumentStats, Thresholds
from .pipeline import ExtractOptions, ExtractionResult, extract, extract_paths
from .replica import (CharRef, ReplicaDocument, TextBlock, enumerate_blocks,
                      load_replica, parse_replica, resolve_absolute)

__version__ = "0.1.0"

__all__ = [
    "BodyText", "BodyTextError", "CharRef", "DocumentStats", "EvalReport",
    "ExtractOptions", "ExtractionResult", "FormatError", "HighlightSpan",
    "PipelineError", "ReplicaDocument", "ReplicaFormatError",
    "ReplicaParseError", "TextBlock", "Thresholds", "aggregate",
    "build_stream", "emit", "enumerate_blocks", "extract", "extract_paths",
    "inject_color", "inject_colors", "load_replica", "locate_sentence",
    "parse_replica", "resolve_absolute", "score", "segment_sentences",
]
