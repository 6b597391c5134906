//! The structures the solver runs on: vertex cactus T and its block tree.
//!
//! cargo run --example vertex_cactus

use cactus_synth::graph::{build_block_tree, build_vertex_cactus, validate_cactus, Block, Graph};

fn main() -> cactus_synth::Result<()> {
    // two triangles and a square meeting at vertex 0, plus a tail 4-7
    let g = Graph::from_edges(
        8,
        &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
    )?;
    let d = validate_cactus(&g)?;
    println!("cycles of G: {:?}", d.cycles);

    let t = build_vertex_cactus(&g, &d);
    println!("T has {} vertices and {} edges", t.n(), t.m());
    for (v, copies) in t.copies.iter().enumerate() {
        if copies.len() > 1 {
            println!("  vertex {v} split into {copies:?}");
        }
    }

    let a = build_block_tree(&t);
    println!("block tree: {} nodes, {} edges, tree = {}", a.nodes.len(), a.edges.len(), a.is_tree());
    for (i, node) in a.nodes.iter().enumerate() {
        match node {
            Block::Cycle(c) => println!("  node {i}: cycle {:?}", t.cycles[*c]),
            Block::SingleVertex(x) => println!("  node {i}: vertex {x} (copy of {})", t.origin[*x]),
        }
    }
    assert_eq!(t.contract()?, g);
    Ok(())
}
