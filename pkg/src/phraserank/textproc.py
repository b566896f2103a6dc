"""Tokenization, sentence segmentation, coarse tagging, candidate extraction.

All operations are pure functions over immutable values, so documents can be
shared between threads freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from importlib import resources as importlib_resources


class CoarseTag(str, Enum):
    ADJECTIVE = "ADJECTIVE"
    NOUN = "NOUN"
    OTHER = "OTHER"


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    tag: CoarseTag
    sentence_index: int
    token_index: int


@dataclass(frozen=True)
class Document:
    tokens: tuple[Token, ...]
    sentence_count: int
    source_id: str = ""


@dataclass(frozen=True)
class CandidatePhrase:
    words: tuple[str, ...]
    occurrences: tuple[tuple[int, int], ...]
    phrase_key: str
    surfaces: tuple[str, ...]


_TOKEN_RE = re.compile(r"\w+(?:['-]\w+)*|[^\w\s]")
_SENTENCE_FINAL = (".", "!", "?")


def _read_resource(name: str) -> str:
    return (
        importlib_resources.files("phraserank")
        .joinpath("resources", name)
        .read_text(encoding="utf-8")
    )


@lru_cache(maxsize=1)
def default_abbreviations() -> frozenset[str]:
    entries = set()
    for line in _read_resource("abbreviations.txt").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line.lower())
    return frozenset(entries)


@lru_cache(maxsize=1)
def default_lexicon() -> dict[str, CoarseTag]:
    lexicon = {}
    for line in _read_resource("tag_lexicon.txt").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, _, tag = line.partition("\t")
        lexicon[word] = CoarseTag[tag.strip()]
    return lexicon


def tokenize(raw_text: str, source_id: str = "", abbreviations=None) -> Document:
    """Split text into tagged-later tokens with sentence and token indices.

    Sentences end at a chunk whose last character is one of ``. ! ?`` unless
    the whole chunk is a known abbreviation. Every token starts out tagged
    OTHER; pos_tag assigns the real tags.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    tokens: list[Token] = []
    sentence = 1
    token_index = 0
    for chunk in raw_text.split():
        is_abbreviation = chunk.lower() in abbreviations
        if is_abbreviation:
            pieces = [chunk]
        else:
            pieces = _TOKEN_RE.findall(chunk)
        for piece in pieces:
            tokens.append(
                Token(
                    surface=piece,
                    normalized=piece.lower(),
                    tag=CoarseTag.OTHER,
                    sentence_index=sentence,
                    token_index=token_index,
                )
            )
            token_index += 1
        if chunk.endswith(_SENTENCE_FINAL) and not is_abbreviation:
            sentence += 1
    count = tokens[-1].sentence_index if tokens else 0
    return Document(tokens=tuple(tokens), sentence_count=count, source_id=source_id)


# Suffix fallback rules, longest suffix first. A word must be at least three
# characters longer than the suffix for a rule to fire, which keeps short
# words like "table" or "city" out of the pattern matches.
_SUFFIX_RULES = (
    ("iveness", CoarseTag.NOUN),
    ("fulness", CoarseTag.NOUN),
    ("ness", CoarseTag.NOUN),
    ("tion", CoarseTag.NOUN),
    ("sion", CoarseTag.NOUN),
    ("ment", CoarseTag.NOUN),
    ("ship", CoarseTag.NOUN),
    ("hood", CoarseTag.NOUN),
    ("ance", CoarseTag.NOUN),
    ("ence", CoarseTag.NOUN),
    ("less", CoarseTag.ADJECTIVE),
    ("able", CoarseTag.ADJECTIVE),
    ("ible", CoarseTag.ADJECTIVE),
    ("ity", CoarseTag.NOUN),
    ("ism", CoarseTag.NOUN),
    ("ous", CoarseTag.ADJECTIVE),
    ("ful", CoarseTag.ADJECTIVE),
    ("ive", CoarseTag.ADJECTIVE),
    ("al", CoarseTag.ADJECTIVE),
    ("ic", CoarseTag.ADJECTIVE),
    ("ly", CoarseTag.OTHER),
    ("ed", CoarseTag.ADJECTIVE),
)


def _is_wordlike(normalized: str) -> bool:
    pieces = normalized.split("-")
    return all(piece.isalpha() for piece in pieces)


def _tag_word(normalized: str, lexicon) -> CoarseTag:
    if normalized in lexicon:
        return lexicon[normalized]
    if not _is_wordlike(normalized):
        return CoarseTag.OTHER
    for suffix, tag in _SUFFIX_RULES:
        if len(normalized) < len(suffix) + 3:
            continue
        if suffix == "ed" and normalized.endswith("eed"):
            continue
        if normalized.endswith(suffix):
            return tag
    return CoarseTag.NOUN


def pos_tag(document: Document, lexicon=None) -> Document:
    """Return a new Document with every token assigned a coarse tag."""
    if lexicon is None:
        lexicon = default_lexicon()
    tagged = tuple(
        replace(tok, tag=_tag_word(tok.normalized, lexicon))
        for tok in document.tokens
    )
    return Document(
        tokens=tagged,
        sentence_count=document.sentence_count,
        source_id=document.source_id,
    )


def _map_penn_tag(tag: str) -> CoarseTag:
    if tag.startswith("JJ"):
        return CoarseTag.ADJECTIVE
    if tag.startswith("NN"):
        return CoarseTag.NOUN
    return CoarseTag.OTHER


def parse_pretagged(text: str, source_id: str = "") -> Document:
    """Parse ``surface_TAG`` lines, one sentence per line.

    Penn-style tags collapse to the coarse set: JJ* becomes ADJECTIVE, NN*
    becomes NOUN, anything else OTHER. A token without an underscore, or
    with an empty surface, raises ValueError naming its line and column.
    """
    tokens: list[Token] = []
    sentence = 0
    token_index = 0
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        sentence += 1
        for match in re.finditer(r"\S+", line):
            raw = match.group()
            column = match.start() + 1
            if "_" not in raw:
                raise ValueError(
                    f"line {line_no}, column {column}: token {raw!r} "
                    "has no tag separator"
                )
            surface, _, tag = raw.rpartition("_")
            if not surface:
                raise ValueError(
                    f"line {line_no}, column {column}: token {raw!r} "
                    "has an empty surface form"
                )
            tokens.append(
                Token(
                    surface=surface,
                    normalized=surface.lower(),
                    tag=_map_penn_tag(tag),
                    sentence_index=sentence,
                    token_index=token_index,
                )
            )
            token_index += 1
    count = tokens[-1].sentence_index if tokens else 0
    return Document(tokens=tuple(tokens), sentence_count=count, source_id=source_id)


def extract_candidates(document: Document) -> list[CandidatePhrase]:
    """Collect maximal adjective*-noun+ runs, merged by normalized phrase.

    Runs never cross sentence boundaries. Occurrences record the sentence
    index and the document-wide index of the first token; output order is
    by first occurrence.
    """
    sentences: dict[int, list[Token]] = {}
    for tok in document.tokens:
        sentences.setdefault(tok.sentence_index, []).append(tok)

    words_by_key: dict[str, tuple[str, ...]] = {}
    surfaces_by_key: dict[str, tuple[str, ...]] = {}
    occurrences_by_key: dict[str, list[tuple[int, int]]] = {}

    for sentence_index in sorted(sentences):
        toks = sentences[sentence_index]
        i = 0
        while i < len(toks):
            a = i
            while a < len(toks) and toks[a].tag is CoarseTag.ADJECTIVE:
                a += 1
            n = a
            while n < len(toks) and toks[n].tag is CoarseTag.NOUN:
                n += 1
            if n == a:
                i = a + 1 if a == i else a
                continue
            span = toks[i:n]
            key = " ".join(t.normalized for t in span)
            if key not in words_by_key:
                words_by_key[key] = tuple(t.normalized for t in span)
                surfaces_by_key[key] = tuple(t.surface for t in span)
                occurrences_by_key[key] = []
            occurrences_by_key[key].append((sentence_index, span[0].token_index))
            i = n

    return [
        CandidatePhrase(
            words=words_by_key[key],
            occurrences=tuple(occurrences_by_key[key]),
            phrase_key=key,
            surfaces=surfaces_by_key[key],
        )
        for key in words_by_key
    ]
