use tcc_core::constructions::{
    compose_reduction_drawing, hill_drawing, k33_book_drawing, minimal_tcurve_triangulation,
    reduction_instance, stacked_triangulation, z_number,
};
use tcc_core::graph::{build_named_graph, chen_yu_bound, is_three_connected, longest_cycle_length};
use tcc_core::map::trace_faces;
use tcc_core::solvers::{book_crossing_number, is_two_page_embeddable};
use tcc_core::Unlimited;

#[test]
fn stacked_counts_follow_the_closed_form() {
    for i in 1..=5u32 {
        let t = stacked_triangulation(i as usize).unwrap();
        let n = 4 + 3 * (3usize.pow(i - 1) - 1) / 2;
        assert_eq!(t.n(), n);
        let g = t.graph();
        assert_eq!(g.m(), 3 * n - 6);
        let faces = trace_faces(&t.map()).unwrap();
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(n + faces.len(), g.m() + 2);
        assert!(is_three_connected(&g).unwrap());
        assert!(t.generation().iter().all(|&r| (1..=i as usize).contains(&r)));
    }
    assert!(stacked_triangulation(0).is_err());
    assert!(stacked_triangulation(6).is_err());
}

#[test]
fn longest_cycles_stay_below_the_bound() {
    for (i, expect_hamiltonian) in [(1, true), (2, true), (3, false)] {
        let g = stacked_triangulation(i).unwrap().graph();
        let len = longest_cycle_length(&g, &Unlimited).done().unwrap();
        assert!((len as f64) < chen_yu_bound(g.n()));
        assert_eq!(len == g.n(), expect_hamiltonian, "T_{i}");
        let two_page = is_two_page_embeddable(&g, &Unlimited).done().unwrap();
        assert_eq!(two_page, expect_hamiltonian, "T_{i}");
    }
}

#[test]
fn hill_drawings_count_z() {
    for n in 3..=12 {
        assert_eq!(hill_drawing(n).unwrap().crossings().unwrap() as u64, z_number(n));
    }
}

#[test]
fn reduction_size_is_linear() {
    let gt = minimal_tcurve_triangulation(2, &Unlimited).unwrap();
    let nt = gt.triangulation.n();
    for n in [3, 6, 9] {
        for k in [0, 1, 5] {
            let g = build_named_graph("cycle", &[n]).unwrap();
            let inst = reduction_instance(&g, &gt, k);
            assert_eq!(inst.graph.n(), n + nt + 6 * k);
            assert_eq!(inst.graph.m(), n + gt.triangulation.graph().m() + 9 * k);
        }
    }
}

#[test]
fn reduction_rejects_crossing_drawings() {
    let gt = minimal_tcurve_triangulation(2, &Unlimited).unwrap();
    assert!(compose_reduction_drawing(&k33_book_drawing(), &gt, 0).is_err());
    let c5 = build_named_graph("cycle", &[5]).unwrap();
    let bd = book_crossing_number(&c5, 1, &Unlimited).witness.unwrap();
    let (_, cert) = compose_reduction_drawing(&bd, &gt, 1).unwrap();
    assert_eq!(cert.crossing_count(), 1);
}
