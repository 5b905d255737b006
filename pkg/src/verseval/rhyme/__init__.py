"""Rhyme density scoring over phonemic transcriptions."""

from .pronounce import (
    Pronunciation,
    PronouncingDictionary,
    Syllable,
    count_vowel_groups,
    default_dictionary,
    fallback_syllables,
    syllabify,
)
from .detector import (
    DEFAULT_CONSONANT_CLASSES,
    KERNEL,
    EmptyVerseError,
    NoPronounceableSyllablesError,
    RhymeAnalysis,
    RhymeParams,
    detect_rhymes,
    entropy_weight,
    token_entropy,
    weighted_rhyme_density,
)

__all__ = [
    "Pronunciation",
    "PronouncingDictionary",
    "Syllable",
    "count_vowel_groups",
    "default_dictionary",
    "fallback_syllables",
    "syllabify",
    "DEFAULT_CONSONANT_CLASSES",
    "KERNEL",
    "EmptyVerseError",
    "NoPronounceableSyllablesError",
    "RhymeAnalysis",
    "RhymeParams",
    "detect_rhymes",
    "entropy_weight",
    "token_entropy",
    "weighted_rhyme_density",
]
