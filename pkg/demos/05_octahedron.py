"""Two detectors per observer: the thick triangle becomes an octahedron.

Giving each of the three observers a second polarizer setting doubles the
vertices to six.  Same-observer settings are mutually exclusive (one photon,
one detector), so only the 12 cross-observer edges and the 8 one-setting-
per-observer faces exist.  The report carries triangle checks per face,
detour (path) checks per quadrilateral, and per-face flat-embedding
verdicts; supplying the three missing diagonals makes the whole figure
testable for embedding in 3-space.
"""


from qig import DetectorSetting, make_named_state, octahedron_report

state = make_named_state("w", 3)
pairs = [
    (DetectorSetting("A", 0.0), DetectorSetting("A", 0.45)),
    (DetectorSetting("B", 0.2), DetectorSetting("B", 0.65)),
    (DetectorSetting("C", 0.1), DetectorSetting("C", 0.55)),
]
report = octahedron_report(state, pairs)

print(f"vertices ({len(report.vertices)}):", ", ".join(report.vertices))
print(f"\nedges ({len(report.edges)}):")
for (u, v), d in sorted(report.edges.items()):
    print(f"  {u}-{v}: {d:.4f}")

print(f"\nfaces ({len(report.faces)}):")
for face in report.faces:
    euclid = f"{face.heron.area:.4f}" if face.heron.defined else "violated"
    print(f"  {'-'.join(face.vertices)}: info area {face.area_info:.4f}, "
          f"euclidean {euclid}, plane-embeddable: {face.cm_embeddable_2d}")

violated = [c for c in report.path_checks if c.violated]
print(f"\ndetour checks: {len(report.path_checks)} quadrilateral paths, "
      f"{len(violated)} violated")

completed = octahedron_report(state, pairs, diagonals={"A": 0.5, "B": 0.5, "C": 0.5})
emb = completed.full_embeddability
print(f"\nwith diagonals 0.5 supplied for each observer, the full 6-point "
      f"figure embeds in 3-space: {emb.embeddable}")
if not emb.embeddable:
    worst = emb.failures()[0]
    print(f"  first failing subset: points {worst.points}, "
          f"determinant {worst.determinant:.4g} ({worst.kind} check)")
