"""Weight diagrams of representations, as DOT text or rendered figures.

A weight diagram has one node per basis vector of a representation and one
edge per nonzero entry of a simple raising operator: if ``e[alpha_k]`` maps
basis vector ``i`` onto basis vector ``j`` the diagram gets an edge from the
higher node ``j`` down to ``i``, labelled ``k``.  For the natural module of
``A3`` this produces a path of four nodes with edge labels 1, 2, 3.

On top of the plain diagram we highlight how the companion root set acts:
the basis column reached by the most companion roots is the pivot (drawn
with a double border) and every node the companion roots move it to is
filled.  This is the picture behind the single-column update used when a
companion form is rewritten as commutators.
"""

from .chevalley import Chevalley


def _fmt_label(lab) -> str:
    kind, payload = lab
    if kind == "v":
        return "(" + ",".join(str(c) for c in payload) + ")"
    if kind == "e":
        return "e(" + ",".join(str(c) for c in payload) + ")"
    return "h%d" % payload


class WeightDiagram:
    """Nodes, edges and companion marks for one representation."""

    def __init__(self, ch: Chevalley, repname=None):
        rep = ch.rep(repname)
        S = ch.S
        self.system = S.name
        self.repname = rep.name
        self.dim = rep.dim
        self.labels = [_fmt_label(lab) for lab in rep.basis_labels]
        edges = []
        for k in range(1, S.rank + 1):
            mat = rep.e[S.simple(k)]
            for j in range(rep.dim):
                for i in range(rep.dim):
                    if mat[j][i]:
                        edges.append((j, i, k))
        self.edges = sorted(edges)
        self.pivot, self.marked = self._companion_marks(ch, rep)
        self.depth = self._layer_depths()

    def _companion_marks(self, ch, rep):
        sigma = ch.S.companion_sigma()
        mats = [rep.e[b] for b in sigma]
        cover = []
        for p in range(rep.dim):
            cover.append(sum(1 for m in mats if any(m[j][p] for j in range(rep.dim))))
        best = max(cover)
        if best == 0:
            return None, []
        pivot = max(p for p in range(rep.dim) if cover[p] == best)
        marked = sorted({j for m in mats for j in range(rep.dim) if m[j][pivot]})
        return pivot, marked

    def _layer_depths(self):
        """Longest chain of lowering steps from a top node to each node."""
        incoming = {i: [] for i in range(self.dim)}
        for j, i, _k in self.edges:
            incoming[i].append(j)
        depth = {}

        def walk(i):
            if i in depth:
                return depth[i]
            depth[i] = 0  # breaks cycles defensively; diagram is acyclic
            d = 0
            for j in incoming[i]:
                d = max(d, walk(j) + 1)
            depth[i] = d
            return d

        for i in range(self.dim):
            walk(i)
        return [depth[i] for i in range(self.dim)]

    def to_dot(self) -> str:
        lines = ["digraph weights {"]
        lines.append('  label="%s %s (dim %d)";' % (self.system, self.repname, self.dim))
        lines.append("  rankdir=TB;")
        lines.append("  node [shape=circle, fontsize=10];")
        for i in range(self.dim):
            attrs = ['label="%s"' % self.labels[i]]
            if i == self.pivot:
                attrs.append("peripheries=2")
            if i in self.marked:
                attrs.append("style=filled")
                attrs.append('fillcolor="gray85"')
            lines.append("  n%d [%s];" % (i, ", ".join(attrs)))
        for j, i, k in self.edges:
            lines.append('  n%d -> n%d [label="%d"];' % (j, i, k))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "system": self.system,
            "rep": self.repname,
            "dim": self.dim,
            "nodes": list(self.labels),
            "edges": [list(e) for e in self.edges],
            "pivot": self.pivot,
            "marked": list(self.marked),
        }

    def render(self, path: str) -> str:
        """Draw the diagram with matplotlib and write an image file."""
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        layers = {}
        for i in range(self.dim):
            layers.setdefault(self.depth[i], []).append(i)
        xy = {}
        for d in sorted(layers):
            row = layers[d]
            for col, i in enumerate(row):
                xy[i] = (col - (len(row) - 1) / 2.0, -d)
        width = max(3.0, 1.4 * max(len(r) for r in layers.values()))
        height = max(3.0, 1.1 * len(layers))
        fig, ax = plt.subplots(figsize=(width, height))
        for j, i, k in self.edges:
            (x1, y1), (x2, y2) = xy[j], xy[i]
            ax.annotate(
                "",
                xy=(x2, y2),
                xytext=(x1, y1),
                arrowprops={"arrowstyle": "-|>", "color": "gray", "shrinkA": 14, "shrinkB": 14},
            )
            ax.text((x1 + x2) / 2, (y1 + y2) / 2, str(k), fontsize=8, color="tab:blue",
                    ha="center", va="center")
        for i in range(self.dim):
            x, y = xy[i]
            face = "lightgray" if i in self.marked else "white"
            lw = 2.4 if i == self.pivot else 1.0
            ax.scatter([x], [y], s=900, facecolors=face, edgecolors="black", linewidths=lw,
                       zorder=3)
            ax.text(x, y, self.labels[i], fontsize=7, ha="center", va="center", zorder=4)
        ax.set_title("%s %s" % (self.system, self.repname))
        ax.set_axis_off()
        ax.margins(0.15)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
        return path


def weight_diagram(ch: Chevalley, repname=None) -> WeightDiagram:
    return WeightDiagram(ch, repname)
