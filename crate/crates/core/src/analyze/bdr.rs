use crate::unfold::{DomainPrefix, PrefixBuilder, Projection};

// label sequences, left to right, for events of steps 4i+1, 4i+2, 4i+3, 4i+4
const PATTERNS: [[u8; 5]; 4] = [[1, 5, 4, 3, 2], [6, 10, 9, 8, 7], [1, 2, 3, 4, 5], [6, 7, 8, 9, 10]];

struct Event {
    step: usize,
    // left-to-right position among the events of its step
    rank: usize,
}

/// Quarter-plane tiling by the two-square tile: the origin has two
/// boundary rays, and every vertex receives a tile in its free angle,
/// i.e. a middle arc and the two squares on either side of it.
///
/// Spheres are kept as left-to-right lists. For a sphere
/// `[u_0, ..., u_{n-1}]` the next one is
/// `[l, m(u_0), w(u_0,u_1), m(u_1), ..., m(u_{n-1}), r]` where `m(u)`
/// is the head of the middle arc of `u`, `w` closes the square over two
/// consecutive vertices, and `l`, `r` continue the rays.
///
/// Construction step `s` creates the ray arcs reaching depth `s` and the
/// middle arcs leaving depth `s - 2`; its events are labelled by the
/// pattern of `s` read cyclically.
fn build(depth: usize, last_middles: bool) -> DomainPrefix {
    let labels = (1..=10).map(|i| i.to_string()).collect();
    let mut b = PrefixBuilder::new(depth, labels);
    let root = b.add_vertex(0, Projection::None, false);
    let mut events: Vec<Event> = Vec::new();
    // arcs with their event; labels are assigned once all steps are known
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    let mut sphere = vec![root];
    // for consecutive pairs of the sphere: events of the arcs from their
    // common predecessor into the left and the right vertex
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for k in 0..depth {
        let n = sphere.len();
        let mut next = Vec::with_capacity(2 * n + 1);
        let mut next_pairs = Vec::with_capacity(2 * n);
        let new_event = |events: &mut Vec<Event>, step, rank| {
            events.push(Event { step, rank });
            events.len() - 1
        };
        let with_middle = last_middles || k + 1 < depth;
        let l = b.add_vertex(k + 1, Projection::None, false);
        let el = new_event(&mut events, k + 1, 0);
        arcs.push((sphere[0], l, el));
        next.push(l);
        // event into the previous vertex of `next`, seen from its predecessor
        let mut prev_event = el;
        for (i, &u) in sphere.iter().enumerate() {
            if with_middle {
                let m = b.add_vertex(k + 1, Projection::None, false);
                let em = new_event(&mut events, k + 2, 1 + i);
                arcs.push((u, m, em));
                next_pairs.push((prev_event, em));
                next.push(m);
                prev_event = em;
            }
            if i + 1 < n {
                let (ea, eb) = pairs[i];
                let w = b.add_vertex(k + 1, Projection::None, false);
                // u -> w is parallel to the arc into the right vertex
                arcs.push((u, w, eb));
                arcs.push((sphere[i + 1], w, ea));
                if with_middle {
                    next_pairs.push((prev_event, eb));
                }
                next.push(w);
                prev_event = ea;
            }
        }
        let r = b.add_vertex(k + 1, Projection::None, false);
        let er = new_event(&mut events, k + 1, usize::MAX);
        arcs.push((sphere[n - 1], r, er));
        next_pairs.push((prev_event, er));
        next.push(r);
        sphere = next;
        pairs = next_pairs;
    }

    let mut label = vec![0u8; events.len()];
    let mut by_step: Vec<Vec<usize>> = Vec::new();
    for (i, e) in events.iter().enumerate() {
        if by_step.len() <= e.step {
            by_step.resize(e.step + 1, Vec::new());
        }
        by_step[e.step].push(i);
    }
    // positions are taken from the full step, whose events are the left
    // ray, the middles and the right ray; the last step may lack its rays
    for (s, evs) in by_step.iter().enumerate().skip(1) {
        let middles = evs.iter().filter(|&&i| events[i].rank != 0 && events[i].rank != usize::MAX).count();
        for &i in evs {
            let t = match events[i].rank {
                usize::MAX => middles + 1,
                r => r,
            };
            label[i] = PATTERNS[(s - 1) % 4][t % 5];
        }
    }
    for (src, dst, e) in arcs {
        b.add_arc(src, dst, label[e] as usize - 1, None);
    }
    b.finish()
}

/// Ball of radius `k` around the origin of the tiling: every vertex of
/// depth below `k` has its three out-arcs.
pub fn bdr_generate(k: usize) -> DomainPrefix {
    build(k, true)
}

/// The first `steps` construction steps taken literally: the deepest
/// level still lacks the middle arcs added by the next step, so only the
/// levels above it are complete.
pub fn bdr_steps(steps: usize) -> DomainPrefix {
    build(steps, false)
}
