"""Regenerate corpus/golden from corpus/articles.

Run only after reviewing a deliberate output change; the test suite compares
against whatever this writes.
"""

from pathlib import Path

from strictmiz.notation import default_table
from strictmiz.views import render

ROOT = Path(__file__).resolve().parent.parent
SUFFIX = {"parse": ".xml", "pretty": ".pretty", "wsm": ".wsm", "msm": ".msm"}


def main():
    table = default_table()
    golden = ROOT / "corpus" / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    for path in sorted((ROOT / "corpus" / "articles").glob("*.miz")):
        text = path.read_text(encoding="utf-8")
        for view, suffix in SUFFIX.items():
            body, _ = render(view, text, table, source_name=path.name)
            (golden / (path.stem + suffix)).write_text(body, encoding="utf-8")


if __name__ == "__main__":
    main()
