"""geceval: evaluation and annotation toolkit for grammatical error correction.

Library surface re-exported here; see the `geceval` command-line tool for
the file-based workflows and `geceval.annotation.http` for the service API.
"""

from geceval.agreement import RatingMatrix, qwk
from geceval.baseline import BaselineConfig, Lexicon, correct_sentence, generate_candidates
from geceval.corpus import SentenceRecord, SystemOutput, load_corpus, load_system_outputs
from geceval.distance import kernel_backend, levenshtein, nld
from geceval.edit_fscore import FBetaConfig, fbeta_corpus, fbeta_edits
from geceval.edits import Edit, EditSet, apply_edits, extract_edits
from geceval.gleu import GleuConfig, gleu_corpus
from geceval.ngram_lm import LmScore, NgramModel, train_char_ngram
from geceval.reports import (
    MetricReport,
    postedit_report,
    rank_correlation,
    score_distribution,
)
from geceval.scribendi import ScribendiConfig, scribendi_corpus, scribendi_sentence
from geceval.textnorm import detokenize, normalize, tokenize

__version__ = "0.1.0"

__all__ = [
    "BaselineConfig",
    "Edit",
    "EditSet",
    "FBetaConfig",
    "GleuConfig",
    "Lexicon",
    "LmScore",
    "MetricReport",
    "NgramModel",
    "RatingMatrix",
    "ScribendiConfig",
    "SentenceRecord",
    "SystemOutput",
    "apply_edits",
    "correct_sentence",
    "detokenize",
    "extract_edits",
    "fbeta_corpus",
    "fbeta_edits",
    "generate_candidates",
    "gleu_corpus",
    "kernel_backend",
    "levenshtein",
    "load_corpus",
    "load_system_outputs",
    "nld",
    "normalize",
    "postedit_report",
    "qwk",
    "rank_correlation",
    "score_distribution",
    "scribendi_corpus",
    "scribendi_sentence",
    "tokenize",
    "train_char_ngram",
]
