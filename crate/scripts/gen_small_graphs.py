"""Write every connected graph on 1..8 vertices (up to isomorphism) as graph6.

Each output line is `<graph6> <planar>` where planar is 0 or 1.  Graphs on at
most 7 vertices come from the networkx graph atlas; 8-vertex graphs are built
by attaching a new vertex to every connected 7-vertex class and deduplicating
by isomorphism.  Counts are checked against OEIS A001349 / A003094.
"""

import sys
from collections import defaultdict
from itertools import combinations

import networkx as nx

CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
PLANAR = {1: 1, 2: 1, 3: 2, 4: 6, 5: 20, 6: 99, 7: 646, 8: 5974}


def main(out_path):
    by_n = defaultdict(list)
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n >= 1 and nx.is_connected(g):
            by_n[n].append(g)

    buckets = defaultdict(list)
    for base in by_n[7]:
        for r in range(1, 8):
            for nbrs in combinations(range(7), r):
                g = base.copy()
                g.add_edges_from((7, v) for v in nbrs)
                key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
                if any(nx.is_isomorphic(g, h) for h in buckets[key]):
                    continue
                buckets[key].append(g)
    by_n[8] = [g for bucket in buckets.values() for g in bucket]

    with open(out_path, "w") as out:
        for n in range(1, 9):
            graphs = by_n[n]
            planar = sum(nx.check_planarity(g)[0] for g in graphs)
            assert len(graphs) == CONNECTED[n], (n, len(graphs))
            assert planar == PLANAR[n], (n, planar)
            for g in graphs:
                g = nx.convert_node_labels_to_integers(g)
                code = nx.to_graph6_bytes(g, header=False).decode().strip()
                out.write(f"{code} {int(nx.check_planarity(g)[0])}\n")
            print(n, len(graphs), planar)


if __name__ == "__main__":
    main(sys.argv[1])
