"""Find time expressions in free text and map them to canonical values and day spans."""
from chronograph.timespan import span_of
from chronograph.timex import TimemlValue, identify, normalize

TEXT = (
    "The treaty was signed on 21 July 1924, revised in June 2012 and first "
    "drafted in the 18th century. Sales for the 2004 third quarter were filed "
    "on 2019/11/25, and the building dates from the early '90s."
)

for raw in identify(TEXT):
    result = normalize(raw)
    if isinstance(result, TimemlValue):
        span = span_of(result)
        print(f"{raw.surface!r:<22} {result.kind.value:<8} {result.canonical:<11} {span}")
    else:
        print(f"{raw.surface!r:<22} rejected ({result.reason.value})")

# spelled-out years are composed word by word
print(normalize("seventeen hundred and fifty two").canonical)
