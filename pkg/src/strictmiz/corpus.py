"""Line statistics over a corpus of (normally WSM-ified) articles."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

LONG_LINE = 500


@dataclass(frozen=True)
class CorpusStats:
    longest_line: int
    mean_line_length: Decimal
    articles_with_line_ge_500: int
    article_count: int

    def render(self) -> str:
        return (
            f"articles: {self.article_count}\n"
            f"longest_line: {self.longest_line}\n"
            f"mean_line_length: {self.mean_line_length}\n"
            f"articles_with_line_ge_500: {self.articles_with_line_ge_500}\n"
        )


def line_lengths(text: str) -> list[int]:
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [len(line) for line in lines]


def corpus_stats(texts) -> CorpusStats:
    """*texts* is an iterable of ``(name, text)`` pairs."""
    longest = 0
    total = 0
    count = 0
    long_articles = 0
    articles = 0
    for _name, text in texts:
        articles += 1
        lengths = line_lengths(text)
        if lengths:
            longest = max(longest, max(lengths))
            if max(lengths) >= LONG_LINE:
                long_articles += 1
        total += sum(lengths)
        count += len(lengths)
    mean = Decimal(total) / Decimal(count) if count else Decimal(0)
    return CorpusStats(
        longest, mean.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP), long_articles, articles
    )
