use super::Multigraph;

pub const NAMED_GRAPHS: &[&str] = &["k2", "k3", "k4", "c4", "p3", "p4", "k33", "petersen"];

/// Built-in small graphs, looked up case-insensitively.
pub fn named_graph(name: &str) -> Option<Multigraph> {
    let pairs: Vec<(usize, usize)> = match name.to_ascii_lowercase().as_str() {
        "k2" => vec![(0, 1)],
        "k3" => vec![(0, 1), (1, 2), (0, 2)],
        "k4" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        "c4" => vec![(0, 1), (1, 2), (2, 3), (3, 0)],
        "p3" => vec![(0, 1), (1, 2)],
        "p4" => vec![(0, 1), (1, 2), (2, 3)],
        "k33" => (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
        "petersen" => {
            let mut p: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            p.extend((0..5).map(|i| (i, i + 5)));
            p.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            p
        }
        _ => return None,
    };
    let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Some(Multigraph::from_pairs(n, &pairs).expect("built-in graphs are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_named_graphs_are_simple() {
        for name in NAMED_GRAPHS {
            let g = named_graph(name).unwrap();
            assert!(g.is_simple(), "{name}");
        }
        let p = named_graph("petersen").unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(named_graph("nope").is_none());
    }
}
