"""Conversation, token extraction, and intensity scoring over chat providers.

Providers are untrusted: every path through this module clamps intensities
onto the 0-4.5/0.1 grid, deduplicates labels, truncates to 7 tokens, and
forces assistant replies to end with a single question. The offline mock
provider gives the whole stack a deterministic oracle.

Sessions live in memory only. Nothing in this module writes message text to
disk or to logs.
"""

from __future__ import annotations

import json
import math
import os
import re
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional, Protocol, Sequence, Union

import httpx

from .errors import (
    EmptyReply,
    MalformedProviderOutput,
    ProviderUnavailable,
    TooFewTokens,
)
from .lexicon import FILLER_LABELS, LEXICON_SET
from .palette import MAX_LABEL_LEN, quantize_intensity

MIN_TOKENS = 4
MAX_TOKENS = 7

ENV_API_KEY = "PHEMOTION_API_KEY"
ENV_API_URL = "PHEMOTION_API_URL"
ENV_MODEL = "PHEMOTION_MODEL"

_FALLBACK_PROBE = "What else stays with you when you revisit that moment?"
_NUDGE_PROBE = "Take your time. Is there a detail from that experience you keep returning to?"
_NUDGE_INSTRUCTION = (
    "The person has paused. Offer one short, gentle follow-up question about "
    "what they already shared. Plain text, one question."
)


@dataclass
class Message:
    role: str  # "user" | "assistant"
    text: str
    timestamp: float


@dataclass
class ChatSession:
    """In-memory conversation state. Never persisted unless persisted=True."""

    session_id: str
    messages: list[Message] = field(default_factory=list)
    persisted: bool = False

    def user_transcript(self) -> str:
        return "\n".join(m.text for m in self.messages if m.role == "user")


@dataclass(frozen=True)
class ScoredLabel:
    label: str
    intensity: float


@dataclass(frozen=True)
class ExtractionResult:
    """4 to 7 distinct tokens with on-grid intensities."""

    tokens: tuple[ScoredLabel, ...]


@dataclass(frozen=True)
class ProviderConfig:
    kind: str = "mock"  # "remote" | "mock"
    endpoint: str = ""
    api_key: str = ""
    model: str = ""
    timeout: float = 30.0
    max_retries: int = 3  # total attempts per request
    seed: int = 0  # consumed by the mock only

    def __post_init__(self):
        if self.kind not in ("remote", "mock"):
            raise ValueError(f"provider kind must be 'remote' or 'mock', got {self.kind!r}")
        if self.kind == "remote" and not (self.endpoint and self.api_key):
            raise ValueError("remote provider requires an endpoint and an api key")

    @classmethod
    def remote_from_env(cls, environ=os.environ, **overrides) -> "ProviderConfig":
        endpoint = overrides.pop("endpoint", None) or environ.get(ENV_API_URL, "")
        api_key = overrides.pop("api_key", None) or environ.get(ENV_API_KEY, "")
        model = overrides.pop("model", None) or environ.get(ENV_MODEL, "")
        if not (endpoint and api_key):
            raise ProviderUnavailable(
                f"remote provider needs {ENV_API_URL} and {ENV_API_KEY} set"
            )
        return cls(kind="remote", endpoint=endpoint, api_key=api_key,
                   model=model, **overrides)


class Provider(Protocol):
    def reply(self, messages: Sequence[Message], nudge: bool = False) -> str: ...

    def extract_raw(self, transcript: str) -> str: ...

    def score_raw(self, transcript: str, labels: Sequence[str]) -> str: ...


def _tokenize(text: str) -> list[str]:
    return re.findall(r"[a-z']+", text.lower())


def _occurrence_intensity(count: int) -> float:
    return min(4.5, 1.0 + 0.5 * count)


_REPLY_TEMPLATES = (
    "It sounds like {word} ran through that experience. What moment brings it back most vividly?",
    "I hear the {word} in what you describe. Where did it feel strongest?",
    "That sense of {word} comes through clearly. What happened just before you noticed it?",
)
_NO_HIT_REPLY = "Thank you for sharing that. What feeling was strongest while it was happening?"


class MockProvider:
    """Fully offline provider, a pure function of (transcript, seed).

    Elicitation names the first lexicon word found; extraction returns the
    lexicon hits in order of first appearance padded to four with the fixed
    fillers; scoring maps a word occurring k times to 1.0 + 0.5k, capped at
    4.5.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed)

    def reply(self, messages: Sequence[Message], nudge: bool = False) -> str:
        if nudge:
            return _NUDGE_PROBE
        last_user = next((m.text for m in reversed(messages) if m.role == "user"), "")
        hit = next((w for w in _tokenize(last_user) if w in LEXICON_SET), None)
        if hit is None:
            return _NO_HIT_REPLY
        idx = (self.seed + len(messages)) % len(_REPLY_TEMPLATES)
        return _REPLY_TEMPLATES[idx].format(word=hit)

    def extract_raw(self, transcript: str) -> str:
        words = _tokenize(transcript)
        labels: list[str] = []
        for w in words:
            if w in LEXICON_SET and w not in labels:
                labels.append(w)
        for filler in FILLER_LABELS:
            if len(labels) >= MIN_TOKENS:
                break
            if filler not in labels:
                labels.append(filler)
        counts = Counter(words)
        return json.dumps(
            [{"label": w, "intensity": _occurrence_intensity(counts[w])} for w in labels]
        )

    def score_raw(self, transcript: str, labels: Sequence[str]) -> str:
        counts = Counter(_tokenize(transcript))
        return json.dumps(
            {lab: _occurrence_intensity(counts[lab.strip().lower()]) for lab in labels}
        )


def mock_provider(seed: int = 0) -> MockProvider:
    return MockProvider(seed)


@lru_cache(maxsize=None)
def _prompt(name: str) -> str:
    return (resources.files("phemotion") / "prompts" / name).read_text("utf-8").strip()


class RemoteProvider:
    """HTTP JSON chat-completion client with bounded retries."""

    def __init__(self, config: ProviderConfig, client: Optional[httpx.Client] = None):
        if config.kind != "remote":
            raise ValueError("RemoteProvider requires a remote ProviderConfig")
        self._config = config
        self._client = client or httpx.Client(timeout=config.timeout)

    def _complete(self, messages: list[dict]) -> str:
        cfg = self._config
        payload = {"model": cfg.model, "messages": messages}
        headers = {"Authorization": f"Bearer {cfg.api_key}"}
        last_error: Union[Exception, str, None] = None
        for _ in range(max(1, cfg.max_retries)):
            try:
                resp = self._client.post(cfg.endpoint, json=payload,
                                         headers=headers, timeout=cfg.timeout)
            except httpx.HTTPError as exc:
                last_error = exc
                continue
            if resp.status_code >= 500:
                last_error = f"HTTP {resp.status_code}"
                continue
            if resp.status_code >= 400:
                raise ProviderUnavailable(f"provider rejected request: HTTP {resp.status_code}")
            try:
                return resp.json()["choices"][0]["message"]["content"]
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                raise MalformedProviderOutput(f"unexpected completion shape: {exc}") from exc
        raise ProviderUnavailable(
            f"provider unreachable after {max(1, cfg.max_retries)} attempts ({last_error})"
        )

    def reply(self, messages: Sequence[Message], nudge: bool = False) -> str:
        chat = [{"role": "system", "content": _prompt("elicit_v1.txt")}]
        chat += [{"role": m.role, "content": m.text} for m in messages]
        if nudge:
            chat.append({"role": "system", "content": _NUDGE_INSTRUCTION})
        return self._complete(chat)

    def extract_raw(self, transcript: str) -> str:
        return self._complete([
            {"role": "system", "content": _prompt("extract_v1.txt")},
            {"role": "user", "content": transcript},
        ])

    def score_raw(self, transcript: str, labels: Sequence[str]) -> str:
        body = json.dumps({"labels": list(labels), "transcript": transcript})
        return self._complete([
            {"role": "system", "content": _prompt("score_v1.txt")},
            {"role": "user", "content": body},
        ])


def make_provider(config: ProviderConfig) -> Provider:
    if config.kind == "mock":
        return MockProvider(config.seed)
    return RemoteProvider(config)


def _strip_markdown(text: str) -> str:
    """Remove formatting characters: leading #/* per line, all backticks/asterisks."""
    lines = []
    for line in text.splitlines():
        s = line.strip()
        while s[:1] in ("#", "*"):
            s = s[1:].lstrip()
        if s:
            lines.append(s)
    return "\n".join(lines).replace("`", "").replace("*", "").strip()


def _ensure_single_question(text: str) -> str:
    t = text.rstrip()
    while t.endswith("??"):
        t = t[:-1]
    if not t.endswith("?"):
        t = f"{t} {_FALLBACK_PROBE}"
    return t


def elicit_reply(session: ChatSession, user_message: str, provider: Provider,
                 *, nudge: bool = False) -> str:
    """One conversational turn: append the user message, get a reply that
    acknowledges it and ends with exactly one question.

    A nudge turn appends no user message; the provider is asked to follow up
    on what is already there.
    """
    if not nudge:
        if not user_message or not user_message.strip():
            raise ValueError("user_message is empty")
        session.messages.append(Message("user", user_message, time.time()))
    raw = provider.reply(session.messages, nudge=nudge)
    text = _strip_markdown(raw or "")
    if not text:
        raise EmptyReply("provider returned an empty reply")
    text = _ensure_single_question(text)
    session.messages.append(Message("assistant", text, time.time()))
    return text


def _parse_token_list(raw: str) -> Optional[list[tuple[str, float]]]:
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, TypeError):
        return None
    if isinstance(doc, dict) and "tokens" in doc:
        doc = doc["tokens"]
    if not isinstance(doc, list):
        return None
    out = []
    for entry in doc:
        if not isinstance(entry, dict):
            return None
        label = entry.get("label")
        intensity = entry.get("intensity")
        if not isinstance(label, str):
            return None
        if isinstance(intensity, bool) or not isinstance(intensity, (int, float)):
            return None
        if not math.isfinite(intensity):
            return None
        out.append((label, float(intensity)))
    return out


def _enforce_tokens(pairs: list[tuple[str, float]]) -> list[ScoredLabel]:
    out: list[ScoredLabel] = []
    seen: set[str] = set()
    for label, intensity in pairs:
        label = label.strip()[:MAX_LABEL_LEN].strip()
        if not label:
            continue
        key = label.casefold()
        if key in seen:
            continue
        seen.add(key)
        out.append(ScoredLabel(label, quantize_intensity(intensity)))
        if len(out) == MAX_TOKENS:
            break
    return out


def extract_tokens(transcript: str, provider: Provider) -> ExtractionResult:
    """Extract 4-7 distinct emotion tokens from a transcript.

    Malformed provider output triggers exactly one reprompt; a second failure
    raises MalformedProviderOutput, and fewer than 4 usable tokens raises
    TooFewTokens.
    """
    if not transcript or not transcript.strip():
        raise ValueError("transcript is empty")
    tokens: Optional[list[ScoredLabel]] = None
    malformed = False
    for _ in range(2):
        parsed = _parse_token_list(provider.extract_raw(transcript))
        if parsed is None:
            malformed = True
            continue
        malformed = False
        tokens = _enforce_tokens(parsed)
        if len(tokens) >= MIN_TOKENS:
            return ExtractionResult(tuple(tokens))
    if malformed:
        raise MalformedProviderOutput("provider output unusable after one reprompt")
    raise TooFewTokens(
        f"only {0 if tokens is None else len(tokens)} usable tokens after one reprompt"
    )


def _parse_score_map(raw: str, labels: Sequence[str]) -> Optional[dict[str, float]]:
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, TypeError):
        return None
    if isinstance(doc, list):
        mapping = {}
        for entry in doc:
            if not isinstance(entry, dict) or not isinstance(entry.get("label"), str):
                return None
            mapping[entry["label"]] = entry.get("intensity")
        doc = mapping
    if not isinstance(doc, dict):
        return None
    folded = {str(k).casefold(): v for k, v in doc.items()}
    out = {}
    for label in labels:
        value = folded.get(label.casefold())
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return None
        if not math.isfinite(value):
            return None
        out[label] = float(value)
    return out


def score_intensity(transcript: str, labels: Sequence[str],
                    provider: Provider) -> list[ScoredLabel]:
    """Score each label against the transcript, preserving input order.

    Out-of-range provider values are clamped to [0, 4.5]; off-grid values
    round half-up to the 0.1 grid.
    """
    labels = list(labels)
    if not labels:
        raise ValueError("labels must be non-empty")
    if len({l.casefold() for l in labels}) != len(labels):
        raise ValueError("labels must be distinct")
    for _ in range(2):
        parsed = _parse_score_map(provider.score_raw(transcript, labels), labels)
        if parsed is not None:
            return [ScoredLabel(l, quantize_intensity(parsed[l])) for l in labels]
    raise MalformedProviderOutput("provider scores unusable after one reprompt")
