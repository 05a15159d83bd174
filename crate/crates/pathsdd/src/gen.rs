//! Benchmark instance generators.

/// Edge list of the (m+1)×(n+1) grid DAG with rightward and downward
/// edges, source at the top-left corner and target at the bottom-right.
/// The number of s-t paths is the binomial coefficient C(m+n, m).
pub fn grid(m: usize, n: usize) -> String {
    let name = |r: usize, c: usize| format!("v{r}_{c}");
    let mut out = String::new();
    out.push_str(&format!("s {}\n", name(0, 0)));
    out.push_str(&format!("t {}\n", name(m, n)));
    for r in 0..=m {
        for c in 0..=n {
            if c < n {
                out.push_str(&format!("e {} {}\n", name(r, c), name(r, c + 1)));
            }
            if r < m {
                out.push_str(&format!("e {} {}\n", name(r, c), name(r + 1, c)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    #[test]
    fn grid_shape() {
        let d = parse_edge_list(&grid(2, 3)).unwrap();
        assert_eq!(d.vertex_count(), 12);
        // 3 rows × 3 right + 4 cols × 2 down
        assert_eq!(d.edge_count(), 17);
        assert_eq!(d.name(d.source()), "v0_0");
        assert_eq!(d.name(d.target()), "v2_3");
    }

    #[test]
    fn grid_1x1() {
        let d = parse_edge_list(&grid(1, 1)).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.edge_count(), 4);
    }
}
