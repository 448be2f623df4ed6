"""Label every ordered pair of dated sentences, then thin the graph out."""
from chronograph.sentencegraph import (
    DensityPolicy,
    annotate_document,
    build_graph,
    density,
    sample_edges,
)

doc = annotate_document(
    "lebron",
    "James joined the Miami Heat in 2010. He returned to the Cleveland Cavaliers "
    "in 2014 and stayed until 2018. In 2016 he won a title with Cleveland. "
    "He later signed with the Lakers in July 2018. Fans were thrilled.",
)
for s in doc.sentences:
    print(s.index, s.span, "|", s.text)

graph = build_graph(doc.sentences, doc.doc_id)
print(f"\nfull graph: {len(graph.edges)} edges, density {density(graph)}")
for i, j, label in graph.edges[:6]:
    print(f"  S{i} -> S{j}: {label.value}")

for name in ("logn", "inv"):
    thin = sample_edges(graph, DensityPolicy.named(name), seed=7)
    print(f"{name:>4}: {len(thin.edges)} edges kept, density {float(density(thin)):.3f}")
