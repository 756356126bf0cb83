"""HTTP client for chat-completion endpoints, with a content-addressed cache.

A request is fully determined by (model, messages, sampling parameters), so
its sha256 doubles as the cache key. Responses are cached to disk before they
are returned; rerunning an interrupted batch replays cached completions and
only sends what is missing. Sampling defaults come from model families:
thinking (0.6 / 0.95 / top_k 20), non_thinking (0.7 / 0.8), and
open_weights_default (1.0 / 1.0).
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import requests

from .errors import AuthError, MalformedResponse, TransportError

API_KEY_ENV = "MODEL_API_KEY"
CACHE_DIR_ENV = "MALRULE_CACHE_DIR"

DEFAULT_MAX_TOKENS = 2048
DEFAULT_RESPONSE_PATH = "choices.0.message.content"

BUILTIN_FAMILIES = {
    "thinking": {"temperature": 0.6, "top_p": 0.95, "top_k": 20},
    "non_thinking": {"temperature": 0.7, "top_p": 0.8},
    "open_weights_default": {"temperature": 1.0, "top_p": 1.0},
}

_RETRYABLE_STATUS = {408, 429, 500, 502, 503, 504}


class ModelProfile:
    """Endpoint location plus the sampling parameters sent with every request."""

    __slots__ = ("model", "endpoint", "temperature", "top_p", "top_k", "max_tokens", "response_path")

    def __init__(
        self,
        model,
        endpoint,
        temperature,
        top_p,
        top_k=None,
        max_tokens=DEFAULT_MAX_TOKENS,
        response_path=DEFAULT_RESPONSE_PATH,
    ):
        self.model = model
        self.endpoint = endpoint
        self.temperature = temperature
        self.top_p = top_p
        self.top_k = top_k
        self.max_tokens = max_tokens
        self.response_path = response_path

    @classmethod
    def from_family(cls, model, endpoint, family, **overrides):
        if family not in BUILTIN_FAMILIES:
            raise ValueError(f"unknown model family {family!r}")
        settings = dict(BUILTIN_FAMILIES[family])
        settings.update(overrides)
        return cls(model, endpoint, **settings)

    def request_body(self, messages):
        body = {
            "model": self.model,
            "messages": list(messages),
            "temperature": self.temperature,
            "top_p": self.top_p,
            "max_tokens": self.max_tokens,
        }
        if self.top_k is not None:
            body["top_k"] = self.top_k
        return body


def load_profiles(path):
    """{name: ModelProfile} from a JSON file of profile definitions.

    An entry may give a "family" to inherit that family's sampling defaults;
    explicit fields win.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    profiles = {}
    for name, entry in raw.items():
        entry = dict(entry)
        family = entry.pop("family", None)
        model = entry.pop("model", name)
        endpoint = entry.pop("endpoint")
        if family is not None:
            profiles[name] = ModelProfile.from_family(model, endpoint, family, **entry)
        else:
            profiles[name] = ModelProfile(model, endpoint, **entry)
    return profiles


def cache_key(body):
    payload = json.dumps(body, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def default_cache_dir():
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "malkit"


class ModelClient:
    def __init__(
        self,
        profile,
        cache_dir=None,
        api_key=None,
        timeout=60.0,
        max_retries=5,
        backoff=0.5,
        session=None,
    ):
        self.profile = profile
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff
        self.session = session if session is not None else requests.Session()

    def _cache_path(self, key):
        return self.cache_dir / f"{key}.json"

    def _read_cache(self, key):
        path = self._cache_path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)["response_text"]
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, KeyError):
            return None  # a torn write never poisons the run; refetch instead

    def _write_cache(self, key, body, text):
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self._cache_path(key)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(
                {"key": key, "request": body, "response_text": text},
                fh,
                ensure_ascii=False,
                sort_keys=True,
            )
        os.replace(tmp, path)

    def _extract_text(self, payload):
        node = payload
        for part in self.profile.response_path.split("."):
            try:
                node = node[int(part)] if part.lstrip("-").isdigit() else node[part]
            except (KeyError, IndexError, TypeError):
                raise MalformedResponse(
                    f"response lacks {self.profile.response_path!r}"
                ) from None
        if not isinstance(node, str):
            raise MalformedResponse("response text is not a string")
        return node

    def _post_once(self, body):
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            resp = self.session.post(
                self.profile.endpoint, json=body, headers=headers, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise TransportError(str(exc)) from exc
        if resp.status_code in (401, 403):
            raise AuthError(f"endpoint returned {resp.status_code}")
        if resp.status_code in _RETRYABLE_STATUS:
            raise TransportError(f"endpoint returned {resp.status_code}")
        if resp.status_code != 200:
            raise MalformedResponse(f"endpoint returned {resp.status_code}")
        try:
            payload = resp.json()
        except ValueError as exc:
            raise MalformedResponse("response body is not JSON") from exc
        return self._extract_text(payload)

    def complete(self, messages):
        """One completion, served from cache when possible."""
        body = self.profile.request_body(messages)
        key = cache_key(body)
        cached = self._read_cache(key)
        if cached is not None:
            return cached
        last = None
        for attempt in range(self.max_retries):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                text = self._post_once(body)
            except TransportError as exc:
                last = exc
                continue
            self._write_cache(key, body, text)
            return text
        raise TransportError(f"giving up after {self.max_retries} attempts: {last}")

    def run_batch(self, batches, max_in_flight=8):
        """Completions for a list of message lists, results index-aligned.

        Identical requests inside one batch are sent once. Failures propagate
        after the pool drains; completed requests are already cached, so a
        rerun resumes where the batch stopped.
        """
        keyed = [(cache_key(self.profile.request_body(m)), m) for m in batches]
        futures = {}
        with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
            for key, messages in keyed:
                if key not in futures:
                    futures[key] = pool.submit(self.complete, messages)
            return [futures[key].result() for key, _ in keyed]
