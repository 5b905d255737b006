"""Evaluation toolkit for ghostwritten verse.

Four complementary measures of generated lyrics — fluency/coherence grading,
tf-idf max similarity against the training verses, phonemic rhyme density
with entropy weighting, and forced-choice style matching — plus the n-gram
baseline generator, regression merge of the automated metrics, an annotation
HTTP service, and a pipeline CLI.
"""

from .corpus import (ArtistCorpus, CleaningRules, CorpusStats,
                     EmptyCorpusError, Provenance, Verse, corpus_stats,
                     golden_corpus_root, load_artist_dir, parse_lyrics,
                     tokenize)
from .evalmerge import (MergedScore, RegressionLine, fit_line,
                        merged_similarity, metric_correlations)
from .generator import (NGramModel, baseline_checkpoint_suite, derive_seed,
                        generate_verse, next_token_distribution, train)
from .rhyme import (PronouncingDictionary, RhymeAnalysis, RhymeParams,
                    default_dictionary, detect_rhymes, entropy_weight,
                    weighted_rhyme_density)
from .similarity import SimilarityScore, TfIdfIndex, build_index, max_similarity

__version__ = "0.1.0"

__all__ = [
    "ArtistCorpus", "CleaningRules", "CorpusStats", "EmptyCorpusError",
    "Provenance", "Verse", "corpus_stats", "golden_corpus_root",
    "load_artist_dir", "parse_lyrics", "tokenize",
    "MergedScore", "RegressionLine", "fit_line", "merged_similarity",
    "metric_correlations",
    "NGramModel", "baseline_checkpoint_suite", "derive_seed",
    "generate_verse", "next_token_distribution", "train",
    "PronouncingDictionary", "RhymeAnalysis", "RhymeParams",
    "default_dictionary", "detect_rhymes", "entropy_weight",
    "weighted_rhyme_density",
    "SimilarityScore", "TfIdfIndex", "build_index", "max_similarity",
    "__version__",
]
