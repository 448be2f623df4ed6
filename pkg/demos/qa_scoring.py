"""Answer scoring and answer-preserving truncation of long contexts."""
from chronograph.qa_eval import exact_match, f1, truncate_context

pairs = [
    ("the Miami Heat", ["Miami Heat"]),
    ("Holyoke College", ["Mount Holyoke College"]),
    ("", [""]),
    ("", ["Cleveland"]),
]
for pred, golds in pairs:
    print(f"{pred!r:<20} {golds!r:<28} EM={exact_match(pred, golds)} F1={f1(pred, golds):.3f}")

context = "filler text " * 200 + "She graduated from Mount Holyoke College in 1837. " + "more filler " * 200
short = truncate_context(context, ["Mount Holyoke College"], limit=1500)
print(len(context), "->", len(short), "chars; answer kept:", "Mount Holyoke College" in short)
