"""Client for external language-model scorers.

Wire format: HTTP POST <endpoint>/score with {"texts": [str, ...]};
response {"scores": [{"log_prob": float, "token_count": int}, ...]} in
input order.  Batching amortizes latency; there is no automatic retry, so
scoring stays deterministic and auditable.
"""

from __future__ import annotations

import httpx

from geceval.errors import ScorerError
from geceval.ngram_lm import LmScore


def _parse_scores(payload, n_texts: int) -> list[LmScore]:
    if not isinstance(payload, dict) or "scores" not in payload:
        raise ScorerError("malformed response: missing 'scores'")
    raw = payload["scores"]
    if not isinstance(raw, list) or len(raw) != n_texts:
        got = len(raw) if isinstance(raw, list) else "non-list"
        missing = list(range(len(raw) if isinstance(raw, list) else 0, n_texts))
        raise ScorerError(
            f"expected {n_texts} scores, got {got}", failed_indices=missing
        )
    scores: list[LmScore] = []
    bad: list[int] = []
    for i, entry in enumerate(raw):
        try:
            scores.append(
                LmScore(log_prob=float(entry["log_prob"]),
                        token_count=int(entry["token_count"]))
            )
        except (TypeError, KeyError, ValueError):
            bad.append(i)
    if bad:
        raise ScorerError("malformed score entries", failed_indices=bad)
    return scores


class ExternalScorer:
    """Batch scorer over the /score wire protocol.

    Also satisfies the `perplexity(text)` protocol so it can stand in for
    the built-in n-gram model wherever a scorer is expected.
    """

    def __init__(self, endpoint: str, timeout: float = 30.0,
                 client: httpx.Client | None = None):
        self.endpoint = endpoint.rstrip("/")
        self._client = client or httpx.Client(timeout=timeout)

    def score_batch(self, texts: list[str]) -> list[LmScore]:
        if not texts:
            return []
        try:
            response = self._client.post(
                f"{self.endpoint}/score", json={"texts": list(texts)}
            )
            response.raise_for_status()
            payload = response.json()
        except httpx.HTTPError as e:
            raise ScorerError(f"scorer request failed: {e}",
                              failed_indices=list(range(len(texts)))) from e
        except ValueError as e:
            raise ScorerError(f"scorer returned invalid JSON: {e}",
                              failed_indices=list(range(len(texts)))) from e
        return _parse_scores(payload, len(texts))

    def perplexity(self, text: str) -> float:
        return self.score_batch([text])[0].perplexity

    def close(self) -> None:
        self._client.close()


def external_score(endpoint: str, texts: list[str],
                   timeout: float = 30.0,
                   client: httpx.Client | None = None) -> list[LmScore]:
    """One-shot batch scoring; an empty batch sends no request."""
    if not texts:
        return []
    scorer = ExternalScorer(endpoint, timeout=timeout, client=client)
    try:
        return scorer.score_batch(texts)
    finally:
        if client is None:
            scorer.close()
