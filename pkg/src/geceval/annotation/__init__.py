from geceval.annotation.events import EventLog, EventRecord
from geceval.annotation.service import AnnotationItem, AnnotationService, build_pool

__all__ = [
    "AnnotationItem",
    "AnnotationService",
    "EventLog",
    "EventRecord",
    "build_pool",
]
