//! Text formats for hypergraphs and partitions.
//!
//! Hypergraph files are UTF-8 text with one hyperedge per line: whitespace
//! separated positive integer node ids, an optional trailing `w=<int>` weight
//! token, `#` comments and an optional leading `n=<int>` header fixing the
//! node count. Partition files carry one cluster id per line, line `i`
//! labeling node `i`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, Partition};

/// Parses the edge-list format. Without a header, `n` is the largest node id.
/// Duplicate identical lines merge by summing weights.
pub fn read_hypergraph(reader: impl BufRead) -> Result<Hypergraph> {
    let mut edges: Vec<(Vec<NodeId>, u64)> = Vec::new();
    let mut declared_n: Option<usize> = None;
    let mut max_id: NodeId = 0;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if declared_n.is_some() || !edges.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "n= header must be the first non-comment line".into(),
                });
            }
            declared_n = Some(rest.trim().parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad node count {rest:?}"),
            })?);
            continue;
        }
        let mut nodes = Vec::new();
        let mut weight = 1u64;
        for tok in line.split_whitespace() {
            if let Some(w) = tok.strip_prefix("w=") {
                weight = w.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad weight token {tok:?}"),
                })?;
                if weight == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "weight must be >= 1".into(),
                    });
                }
            } else {
                let v: i64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad node id {tok:?}"),
                })?;
                if v < 1 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("node id {v} must be positive"),
                    });
                }
                let v = v as NodeId;
                max_id = max_id.max(v);
                nodes.push(v);
            }
        }
        if nodes.is_empty() {
            return Err(Error::Parse {
                line: lineno,
                msg: "line has no node ids".into(),
            });
        }
        edges.push((nodes, weight));
    }
    let n = declared_n.unwrap_or(max_id as usize);
    if (max_id as usize) > n {
        return Err(Error::InvalidInput(format!(
            "node id {max_id} exceeds declared n={n}"
        )));
    }
    Hypergraph::new(n, edges)
}

/// Writes the canonical form: `n=` header, then one sorted edge per line with
/// `w=` appended only for weights above 1. `read(write(h)) == h`.
pub fn write_hypergraph(h: &Hypergraph, mut writer: impl Write) -> Result<()> {
    writeln!(writer, "n={}", h.n())?;
    for e in h.edges() {
        let ids: Vec<String> = e.nodes().iter().map(|v| v.to_string()).collect();
        if e.weight() == 1 {
            writeln!(writer, "{}", ids.join(" "))?;
        } else {
            writeln!(writer, "{} w={}", ids.join(" "), e.weight())?;
        }
    }
    Ok(())
}

/// Reads a partition file: line `i` holds the cluster id of node `i`.
pub fn read_partition(reader: impl BufRead) -> Result<Partition> {
    let mut labels = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let l: u32 = line.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("bad cluster id {line:?}"),
        })?;
        labels.push(l);
    }
    Partition::from_labels(labels)
}

pub fn write_partition(p: &Partition, mut writer: impl Write) -> Result<()> {
    for &l in p.labels() {
        writeln!(writer, "{l}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_edge_list() {
        let text = "1 2\n1 2 3\n3 4\n";
        let h = read_hypergraph(text.as_bytes()).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.size_counts().get(&2), Some(&2));
        assert_eq!(h.size_counts().get(&3), Some(&1));
        assert!(h.edges().iter().all(|e| e.weight() == 1));
    }

    #[test]
    fn duplicate_lines_merge() {
        let h = read_hypergraph("1 2\n1 2\n".as_bytes()).unwrap();
        assert_eq!(h.edges().len(), 1);
        assert_eq!(h.edges()[0].weight(), 2);
    }

    #[test]
    fn bad_node_id_reports_line() {
        let err = read_hypergraph("1 0 3\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn header_weights_comments() {
        let text = "# synthetic\nn=6\n1 2 w=3\n4 5 6\n";
        let h = read_hypergraph(text.as_bytes()).unwrap();
        assert_eq!(h.n(), 6);
        assert_eq!(h.edges()[0].weight(), 3);
    }

    #[test]
    fn round_trip() {
        let h = read_hypergraph("n=5\n1 2 w=2\n2 3 4\n".as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_hypergraph(&h, &mut buf).unwrap();
        let back = read_hypergraph(buf.as_slice()).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn partition_round_trip() {
        let p = read_partition("1\n1\n2\n2\n".as_bytes()).unwrap();
        assert_eq!(p.k(), 2);
        let mut buf = Vec::new();
        write_partition(&p, &mut buf).unwrap();
        assert_eq!(std::str::from_utf8(&buf).unwrap(), "1\n1\n2\n2\n");
    }
}
