//! Instance builders: constructions that map colorability / satisfiability
//! structure into domatic-style partition numbers, and the composition
//! gadgets that make those numbers add up.

use crate::budget::Budget;
use crate::exact_set::ExactSet;
use crate::graph::{
    disjoint_union, has_isolated_vertex, is_two_colorable, join, DecoratedGraph, Graph, Partition,
};
use crate::sat::{nae_closure, pad_for_nae, Cnf3, Lit, SatError, TripleSystem};
use crate::srp::{alpha, beta, SrpError};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("input graph has an isolated vertex")]
    IsolatedVertex,
    #[error("input graph is 2-colorable")]
    TwoColorable,
    #[error("operand carries no decorated triangles")]
    EmptyDecoration,
    #[error("expected an even number of operands, got {0}")]
    OddLength(usize),
    #[error("formulas share variable name `{0}`")]
    SharedVariables(String),
    #[error("padding changed not-all-equal satisfiability")]
    PadFailure,
    #[error("triple system contains a negative literal")]
    NegativeLiteral,
    #[error("graph does not have the one-in-three image shape")]
    NotImageShaped,
    #[error("witness partition unusable: {0}")]
    BadWitness(String),
    #[error(transparent)]
    Srp(#[from] SrpError),
}

impl From<SatError> for ReductionError {
    fn from(e: SatError) -> Self {
        match e {
            SatError::PadFailure => ReductionError::PadFailure,
            other => ReductionError::BadWitness(other.to_string()),
        }
    }
}

/// Subdivide every edge and complete the originals into a clique. The image
/// has one decorated triangle per original edge (in lexicographic edge
/// order), minimum degree 2, and its domatic number is 3 exactly when the
/// input is 3-chromatic, else 2.
pub fn kaplan_shamir(g: &Graph) -> Result<DecoratedGraph, ReductionError> {
    if has_isolated_vertex(g) {
        return Err(ReductionError::IsolatedVertex);
    }
    if is_two_colorable(g) {
        return Err(ReductionError::TwoColorable);
    }
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    let mut labels: Vec<String> = (0..n).map(|v| g.label(v).to_string()).collect();
    let mut triangles = Vec::new();
    for (idx, &(i, j)) in g.edges().iter().enumerate() {
        let u = n + idx;
        edges.push((i as usize, u));
        edges.push((j as usize, u));
        labels.push(format!("u{i}.{j}"));
        triangles.push([i, u as u32, j]);
    }
    let graph = Graph::with_labels(n + g.edge_count(), &edges, labels).expect("construction is simple");
    let image = DecoratedGraph::new(graph, triangles).expect("each edge induces a triangle");
    debug_assert!((0..image.graph().n()).all(|v| {
        image.triangles().iter().any(|t| t.contains(&(v as u32)))
    }));
    Ok(image)
}

/// Adjacency pattern of six gadget vertices against two triangles
/// (slots 0..3 are the first triangle, 3..6 the second). Each gadget vertex
/// belongs to one triangle's trio, sees all of the opposite triangle, and
/// misses exactly one vertex of its own; gadget vertices are pairwise
/// non-adjacent, so each has degree 5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    adjacency: [[bool; 6]; 6],
}

impl GadgetSpec {
    pub fn standard() -> Self {
        let mut adjacency = [[false; 6]; 6];
        for trio in 0..2 {
            for l in 0..3 {
                let row = &mut adjacency[3 * trio + l];
                // all of the opposite triangle
                for s in 0..3 {
                    row[3 * (1 - trio) + s] = true;
                }
                // own triangle minus the anti vertex
                for s in 0..3 {
                    if s != 2 - l {
                        row[3 * trio + s] = true;
                    }
                }
            }
        }
        let spec = GadgetSpec { adjacency };
        spec.validate().expect("standard pattern satisfies all constraints");
        spec
    }

    pub fn adjacency(&self) -> &[[bool; 6]; 6] {
        &self.adjacency
    }

    pub fn validate(&self) -> Result<(), String> {
        for (i, row) in self.adjacency.iter().enumerate() {
            let deg = row.iter().filter(|&&b| b).count();
            if deg != 5 {
                return Err(format!("gadget vertex {i} has degree {deg}, want 5"));
            }
        }
        // the third vertex of the first trio must miss the first triangle's
        // first corner and see all of the second triangle
        if self.adjacency[2][0] || !(self.adjacency[2][3] && self.adjacency[2][4] && self.adjacency[2][5]) {
            return Err("trio vertex 3 must miss its own first corner and see the whole opposite triangle".into());
        }
        // first corner of the first triangle sees every gadget vertex except that one
        for i in [0, 1, 3, 4, 5] {
            if !self.adjacency[i][0] {
                return Err(format!("gadget vertex {i} must see the first corner"));
            }
        }
        Ok(())
    }
}

/// Connects every triangle pair of the two operands with a fresh 6-vertex
/// gadget. The resulting graph's domatic number is the sum of the operands'.
pub fn gadget_join(h1: &DecoratedGraph, h2: &DecoratedGraph) -> Result<Graph, ReductionError> {
    if h1.triangles().is_empty() || h2.triangles().is_empty() {
        return Err(ReductionError::EmptyDecoration);
    }
    let spec = GadgetSpec::standard();
    let (g1, g2) = (h1.graph(), h2.graph());
    let n1 = g1.n();
    let base = n1 + g2.n();
    let mut edges: Vec<(usize, usize)> = g1.edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect();
    edges.extend(g2.edges().iter().map(|&(u, v)| (u as usize + n1, v as usize + n1)));
    let mut labels: Vec<String> = g1.labels().iter().map(|l| format!("h1.{l}")).collect();
    labels.extend(g2.labels().iter().map(|l| format!("h2.{l}")));

    let mut block = 0usize;
    for t1 in h1.triangles() {
        for t2 in h2.triangles() {
            let slots: [usize; 6] = [
                t1[0] as usize,
                t1[1] as usize,
                t1[2] as usize,
                t2[0] as usize + n1,
                t2[1] as usize + n1,
                t2[2] as usize + n1,
            ];
            let gbase = base + 6 * block;
            for (i, row) in spec.adjacency().iter().enumerate() {
                labels.push(format!("g{block}.a{}", i + 1));
                for (s, &adj) in row.iter().enumerate() {
                    if adj {
                        edges.push((gbase + i, slots[s]));
                    }
                }
            }
            block += 1;
        }
    }
    Ok(Graph::with_labels(base + 6 * block, &edges, labels).expect("construction is simple"))
}

/// The even-arity generalization: one fresh block of 6k gadget vertices per
/// tuple in the product of the operands' triangle lists. Each trio sees two
/// vertices of its own triangle and all of every other tuple member, so
/// every gadget vertex has degree 6k-1. With two operands this reproduces
/// [`gadget_join`] exactly.
pub fn multi_gadget_join(hs: &[DecoratedGraph]) -> Result<Graph, ReductionError> {
    if hs.len() < 2 || !hs.len().is_multiple_of(2) {
        return Err(ReductionError::OddLength(hs.len()));
    }
    if hs.iter().any(|h| h.triangles().is_empty()) {
        return Err(ReductionError::EmptyDecoration);
    }
    let count = hs.len();
    let mut offsets = Vec::with_capacity(count);
    let mut base = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (idx, h) in hs.iter().enumerate() {
        offsets.push(base);
        edges.extend(h.graph().edges().iter().map(|&(u, v)| (u as usize + base, v as usize + base)));
        labels.extend(h.graph().labels().iter().map(|l| format!("h{}.{l}", idx + 1)));
        base += h.graph().n();
    }

    // lexicographic odometer over triangle choices, first operand slowest
    let mut choice = vec![0usize; count];
    let mut block = 0usize;
    loop {
        let tuples: Vec<[usize; 3]> = (0..count)
            .map(|i| {
                let t = hs[i].triangles()[choice[i]];
                [t[0] as usize + offsets[i], t[1] as usize + offsets[i], t[2] as usize + offsets[i]]
            })
            .collect();
        let gbase = base + 3 * count * block;
        for i in 0..count {
            for l in 0..3 {
                let a = gbase + 3 * i + l;
                labels.push(format!("g{block}.a{}", 3 * i + l + 1));
                for (s, &w) in tuples[i].iter().enumerate() {
                    if s != 2 - l {
                        edges.push((a, w));
                    }
                }
                for (j, tuple) in tuples.iter().enumerate() {
                    if j != i {
                        for &w in tuple {
                            edges.push((a, w));
                        }
                    }
                }
            }
        }
        block += 1;
        let mut pos = count;
        loop {
            if pos == 0 {
                let n = base + 3 * count * block;
                return Ok(Graph::with_labels(n, &edges, labels).expect("construction is simple"));
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < hs[pos].triangles().len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// The domatic-sum product: a [`gadget_join`] re-decorated with both
/// operands' triangle lists (gadget vertices join no decorated triangle),
/// so chains fold left-associatively.
pub fn times(h1: &DecoratedGraph, h2: &DecoratedGraph) -> Result<DecoratedGraph, ReductionError> {
    let graph = gadget_join(h1, h2)?;
    let n1 = h1.graph().n() as u32;
    let mut triangles = h1.triangles().to_vec();
    triangles.extend(h2.triangles().iter().map(|t| [t[0] + n1, t[1] + n1, t[2] + n1]));
    Ok(DecoratedGraph::new(graph, triangles).expect("operand triangles survive the join"))
}

/// Folds the odd-indexed and even-indexed operands (1-based) into one
/// product each. With two operands the pair is returned unchanged.
pub fn parity_pair(
    hs: &[DecoratedGraph],
) -> Result<(DecoratedGraph, DecoratedGraph), ReductionError> {
    if hs.len() < 2 || !hs.len().is_multiple_of(2) {
        return Err(ReductionError::OddLength(hs.len()));
    }
    let fold = |items: Vec<&DecoratedGraph>| -> Result<DecoratedGraph, ReductionError> {
        let mut acc = items[0].clone();
        for h in &items[1..] {
            acc = times(&acc, h)?;
        }
        Ok(acc)
    };
    let odd = fold(hs.iter().step_by(2).collect())?;
    let even = fold(hs.iter().skip(1).step_by(2).collect())?;
    Ok((odd, even))
}

/// The k noncontiguous odd values `{4k+1, 4k+3, ..., 6k-1}`: the possible
/// domatic totals of a 2k-operand gadget join whose operand values (each 2
/// or 3, sorted 3s first) contain an odd number of 3s.
pub fn domatic_target_set(k: usize) -> ExactSet {
    assert!(k >= 1, "k must be positive");
    let values = (0..k).map(|i| (4 * k + 1 + 2 * i) as u64).collect();
    ExactSet::new(values).expect("odd spacing is noncontiguous")
}

/// Graph whose total-domatic level separates the not-all-equal
/// satisfiability pattern of two variable-disjoint formulas: level 4 when
/// both are satisfiable, 3 when exactly the first is, 2 when neither is.
/// Both formulas are padded (see [`pad_for_nae`]) and closed under
/// literal-wise negation before the graph is built.
pub fn nae_construct(f1: &Cnf3, f2: &Cnf3) -> Result<Graph, ReductionError> {
    if let (Some(a), Some(b)) = (&f1.names, &f2.names) {
        let set: BTreeSet<&String> = a.iter().collect();
        if let Some(shared) = b.iter().find(|name| set.contains(name)) {
            return Err(ReductionError::SharedVariables(shared.clone()));
        }
    }
    let (p1, _) = pad_for_nae(f1)?;
    let (p2, _) = pad_for_nae(f2)?;
    let cc = nae_closure(&p1);
    let dd = nae_closure(&p2);
    let (n, r) = (p1.num_vars, p2.num_vars);

    let x_pos = |v: usize| 16 + 2 * v;
    let x_neg = |v: usize| 16 + 2 * v + 1;
    let y_pos = |v: usize| 16 + 2 * n + 2 * v;
    let y_neg = |v: usize| 16 + 2 * n + 2 * v + 1;
    let base_u = 16 + 2 * n + 2 * r;
    let u_at = |i: usize, j: usize| base_u + i * r + j;
    let base_c = base_u + n * r;
    let base_d = base_c + cc.clauses.len();
    let total = base_d + dd.clauses.len();

    let mut labels = Vec::with_capacity(total);
    for i in 0..8 {
        labels.push(format!("a{}", i + 1));
    }
    for i in 0..8 {
        labels.push(format!("b{}", i + 1));
    }
    for v in 0..n {
        labels.push(format!("x{}", v + 1));
        labels.push(format!("~x{}", v + 1));
    }
    for v in 0..r {
        labels.push(format!("y{}", v + 1));
        labels.push(format!("~y{}", v + 1));
    }
    for i in 0..n {
        for j in 0..r {
            labels.push(format!("u{}.{}", i + 1, j + 1));
        }
    }
    for t in 0..cc.clauses.len() {
        labels.push(format!("c{}", t + 1));
    }
    for t in 0..dd.clauses.len() {
        labels.push(format!("d{}", t + 1));
    }

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add = |edges: &mut BTreeSet<(usize, usize)>, u: usize, v: usize| {
        edges.insert((u.min(v), u.max(v)));
    };
    for i in 0..8 {
        for j in i + 1..8 {
            add(&mut edges, i, j);
            add(&mut edges, 8 + i, 8 + j);
        }
    }
    for v in 0..n {
        for lit_vertex in [x_pos(v), x_neg(v)] {
            add(&mut edges, lit_vertex, 0);
            add(&mut edges, lit_vertex, 1);
        }
    }
    for v in 0..r {
        for lit_vertex in [y_pos(v), y_neg(v)] {
            add(&mut edges, lit_vertex, 8);
            add(&mut edges, lit_vertex, 9);
        }
    }
    for i in 0..n {
        for j in 0..r {
            let u = u_at(i, j);
            add(&mut edges, u, x_pos(i));
            add(&mut edges, u, x_neg(i));
            add(&mut edges, u, y_pos(j));
            add(&mut edges, u, y_neg(j));
        }
    }
    let x_vertex = |l: Lit| if l.negated { x_neg(l.var as usize) } else { x_pos(l.var as usize) };
    let y_vertex = |l: Lit| if l.negated { y_neg(l.var as usize) } else { y_pos(l.var as usize) };
    for (t, clause) in cc.clauses.iter().enumerate() {
        let cv = base_c + t;
        for &l in clause {
            add(&mut edges, cv, x_vertex(l));
        }
        add(&mut edges, cv, 0);
        add(&mut edges, cv, 1);
    }
    for (t, clause) in dd.clauses.iter().enumerate() {
        let dv = base_d + t;
        for &l in clause {
            add(&mut edges, dv, y_vertex(l));
        }
        add(&mut edges, dv, 8);
        add(&mut edges, dv, 9);
    }

    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    Ok(Graph::with_labels(total, &edge_list, labels).expect("construction is simple"))
}

/// Graph whose near-matching split level tracks one-in-three solvability of
/// a positive triple system: level 2 when solvable, 3 when not. Per set a
/// 4-clique of three literal slots plus an anchor; per occurring variable an
/// edge whose endpoints attach to every slot of that variable; one extra
/// 4-clique whose head vertex attaches to every anchor.
pub fn one_in_three_graph(s: &TripleSystem) -> Result<Graph, ReductionError> {
    if !s.all_positive() {
        return Err(ReductionError::NegativeLiteral);
    }
    let m = s.sets.len();
    let occurring: Vec<u32> = {
        let set: BTreeSet<u32> = s.sets.iter().flatten().map(|l| l.var).collect();
        set.into_iter().collect()
    };
    let base_e = 4 * m;
    let base_s = base_e + 2 * occurring.len();
    let total = base_s + 4;

    let mut labels = Vec::with_capacity(total);
    for (i, set) in s.sets.iter().enumerate() {
        for (l, lit) in set.iter().enumerate() {
            labels.push(format!("s{}.l{}:x{}", i + 1, l + 1, lit.var + 1));
        }
        labels.push(format!("s{}.a", i + 1));
    }
    for &v in &occurring {
        labels.push(format!("e:x{}.0", v + 1));
        labels.push(format!("e:x{}.1", v + 1));
    }
    labels.extend(["s".into(), "t1".into(), "t2".into(), "t3".into()]);

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((4 * i + a, 4 * i + b));
            }
        }
    }
    let endpoint = |vi: usize| (base_e + 2 * vi, base_e + 2 * vi + 1);
    for (vi, _) in occurring.iter().enumerate() {
        let (e0, e1) = endpoint(vi);
        edges.push((e0, e1));
    }
    for (i, set) in s.sets.iter().enumerate() {
        for (l, lit) in set.iter().enumerate() {
            let vi = occurring.binary_search(&lit.var).unwrap();
            let (e0, e1) = endpoint(vi);
            let slot = 4 * i + l;
            edges.push((e0, slot));
            edges.push((e1, slot));
        }
    }
    for a in 0..4 {
        for b in a + 1..4 {
            edges.push((base_s + a, base_s + b));
        }
    }
    for i in 0..m {
        edges.push((base_s, 4 * i + 3));
    }
    Ok(Graph::with_labels(total, &edges, labels).expect("construction is simple"))
}

/// Two disjoint copies of each side's image, joined: near-matching split
/// levels add across the join, and joined 4-cliques form 8-cliques.
pub fn one_in_three_pair_join(
    s1: &TripleSystem,
    s2: &TripleSystem,
) -> Result<Graph, ReductionError> {
    let g11 = one_in_three_graph(s1)?;
    let g21 = one_in_three_graph(s2)?;
    let g1 = disjoint_union(&g11, &g11);
    let g2 = disjoint_union(&g21, &g21);
    Ok(join(&g1, &g2))
}

/// True iff the near-matching and exact-matching split levels agree, which
/// holds on every one-in-three image. Refuses graphs that do not look like
/// such an image (single image, disjoint pair of images, or a join of two
/// such pairs).
pub fn alpha_beta_agree(g: &Graph, budget: Budget) -> Result<bool, ReductionError> {
    if !is_image_assembly(g) {
        return Err(ReductionError::NotImageShaped);
    }
    let a = alpha(g, budget)?;
    let b = beta(g, budget)?;
    Ok(Some(a) == b)
}

/// Builds the (d1+d2)-class domatic witness for [`gadget_join`] out of
/// domatic witnesses of the operands: operand classes carry over, and in
/// every gadget block the vertex that misses triangle corner w joins w's
/// class. Requires every operand class to hit every decorated triangle,
/// which any domatic partition of a subdivision image satisfies.
pub fn additive_witness_partition(
    h1: &DecoratedGraph,
    h2: &DecoratedGraph,
    p1: &Partition,
    p2: &Partition,
) -> Result<Partition, ReductionError> {
    for (which, (h, p)) in [(1, (h1, p1)), (2, (h2, p2))] {
        if p.len() != h.graph().n() {
            return Err(ReductionError::BadWitness(format!("operand {which}: wrong vertex count")));
        }
        for t in h.triangles() {
            for class in 0..p.k() {
                if !t.iter().any(|&v| p.class_of(v as usize) == class) {
                    return Err(ReductionError::BadWitness(format!(
                        "operand {which}: class {class} misses triangle {t:?}"
                    )));
                }
            }
        }
    }
    let (d1, d2) = (p1.k(), p2.k());
    let n1 = h1.graph().n();
    let n2 = h2.graph().n();
    let blocks = h1.triangles().len() * h2.triangles().len();
    let mut class_of: Vec<u32> = Vec::with_capacity(n1 + n2 + 6 * blocks);
    class_of.extend(p1.classes().iter().copied());
    class_of.extend(p2.classes().iter().map(|&c| c + d1 as u32));
    for t1 in h1.triangles() {
        for t2 in h2.triangles() {
            // gadget slot 2-s is the one missing corner s of its triangle
            let mut block = [0u32; 6];
            for s in 0..3 {
                block[2 - s] = p1.class_of(t1[s] as usize) as u32;
                block[3 + 2 - s] = p2.class_of(t2[s] as usize) as u32 + d1 as u32;
            }
            class_of.extend_from_slice(&block);
        }
    }
    Ok(Partition::new(d1 + d2, class_of).expect("classes in range"))
}

/// Shape check for one-in-three images and their assemblies: the complement
/// splits the graph into its join factors; every connected piece of every
/// factor must contain the distinctive head clique (a vertex whose three
/// degree-3 neighbors are mutually adjacent and closed over the quadruple).
fn is_image_assembly(g: &Graph) -> bool {
    let factors = complement_components(g);
    if factors.is_empty() || factors.len() > 2 {
        return false;
    }
    factors.iter().all(|factor| {
        let pieces = induced_components(g, factor);
        (1..=2).contains(&pieces.len()) && pieces.iter().all(|p| has_head_clique(g, p))
    })
}

#[allow(clippy::needless_range_loop)]
fn complement_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if !seen[v] && v != u && !g.has_edge(u, v) {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn induced_components(g: &Graph, vertices: &[usize]) -> Vec<Vec<usize>> {
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in vertices {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                let w = w as usize;
                if inside.contains(&w) && seen.insert(w) {
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn has_head_clique(g: &Graph, piece: &[usize]) -> bool {
    let inside: BTreeSet<usize> = piece.iter().copied().collect();
    let in_deg = |v: usize| g.neighbors(v).iter().filter(|&&w| inside.contains(&(w as usize))).count();
    for &head in piece {
        let tails: Vec<usize> = g
            .neighbors(head)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| inside.contains(&w) && in_deg(w) == 3)
            .collect();
        for a in 0..tails.len() {
            for b in a + 1..tails.len() {
                for c in b + 1..tails.len() {
                    let (ta, tb, tc) = (tails[a], tails[b], tails[c]);
                    if g.has_edge(ta, tb) && g.has_edge(tb, tc) && g.has_edge(ta, tc) {
                        let quad = [head, ta, tb, tc];
                        let closed = [ta, tb, tc].iter().all(|&t| {
                            g.neighbors(t)
                                .iter()
                                .all(|&w| !inside.contains(&(w as usize)) || quad.contains(&(w as usize)))
                        });
                        if closed {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}
