"""Pack a synthetic corpus into marked-up training instances and read them back."""
from collections import Counter

from chronograph.instances import PackingConfig, pack, parse, serialize
from chronograph.sentencegraph import DensityPolicy, annotate_document
from chronograph.synth import corpus

config = PackingConfig(budget=64, max_nodes=4)
tally = Counter()
lines = []
for doc_id, text in corpus(seed=1, n_docs=20):
    for inst in pack(annotate_document(doc_id, text), config, DensityPolicy.named("logn"), seed=3, diagnostics=tally):
        lines.append(serialize(inst))

print(dict(tally))
first = parse(lines[0])
print(first.text)
for (a, b), span in zip(first.node_boundaries, first.spans):
    print(f"  [{a}:{b}] {span}")
print("edges:", [(i, j, r.value) for i, j, r in first.edges])
assert all(serialize(parse(line)) == line for line in lines)
