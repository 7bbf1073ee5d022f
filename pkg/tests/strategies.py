from hypothesis import strategies as st

from digitopo import Graph


@st.composite
def graphs(draw, min_vertices: int = 0, max_vertices: int = 8, connected: bool = False):
    n = draw(st.integers(min_vertices, max_vertices))
    names = [f"v{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    edges = [p for p in pairs if draw(st.booleans())]
    if connected and n > 1:
        # a random spanning tree keeps the graph connected
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            edges.append((names[j], names[i]))
    return Graph(names, edges)


@st.composite
def permuted(draw, g: Graph):
    perm = draw(st.permutations(list(g.vertices)))
    return g.relabel(dict(zip(g.vertices, [f"u{p}" for p in perm])))
