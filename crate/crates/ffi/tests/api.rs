use std::ffi::{CStr, CString};
use std::ptr;

use egraphsim_ffi::*;

fn last_error() -> String {
    let p = egs_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { egs_string_free(p) };
    s
}

fn plan<F: FnOnce(*mut *mut EgsPlan) -> EgsStatus>(make: F) -> *mut EgsPlan {
    let mut out = ptr::null_mut();
    assert_eq!(make(&mut out), EgsStatus::Ok);
    assert!(!out.is_null());
    out
}

#[test]
fn complete_plan_costs_match_closed_form() {
    for n in 2..=30usize {
        let p = plan(|o| unsafe { egs_plan_complete(n, o) });
        let n64 = n as u64;
        let brute: u64 = (0..n64)
            .flat_map(|i| (i + 1..n64).map(move |j| j - i))
            .sum();
        unsafe {
            assert_eq!(egs_plan_predicted_cost(p), brute);
            assert_eq!(egs_plan_edge_count(p), n * (n - 1) / 2);
            assert_eq!(egs_plan_num_nodes(p), n);

            let mut formula = 0;
            assert_eq!(egs_formula_complete(n64, &mut formula), EgsStatus::Ok);
            assert_eq!(formula, brute);

            let mut len = 0;
            assert_eq!(
                egs_plan_allocation(p, ptr::null_mut(), 0, &mut len),
                EgsStatus::Ok
            );
            assert_eq!(len, n - 1);
            let mut alloc = vec![0u64; len];
            assert_eq!(
                egs_plan_allocation(p, alloc.as_mut_ptr(), len, &mut len),
                EgsStatus::Ok
            );
            for (s, &k) in alloc.iter().enumerate() {
                let s = s as u64;
                assert_eq!(k, (s + 1) * (n64 - 1 - s));
            }
            egs_plan_free(p);
        }
    }
}

#[test]
fn execute_ring_and_inspect_network() {
    let p = plan(|o| unsafe { egs_plan_ring(6, o) });
    let mode = egs_swap_mode_ideal();
    let mut net = ptr::null_mut();
    unsafe {
        assert_eq!(egs_plan_execute(p, mode, &mut net), EgsStatus::Ok);
        let mut ledger = EgsLedger::default();
        assert_eq!(egs_network_ledger(net, &mut ledger), EgsStatus::Ok);
        assert_eq!(ledger.initial_links_created, 10);
        assert_eq!(ledger.swaps_performed, 4);
        assert_eq!(ledger.live_links, 6);
        assert_eq!(egs_network_link_count(net), 6);

        let mut m = EgsMetrics::default();
        assert_eq!(egs_network_metrics(net, &mut m), EgsStatus::Ok);
        assert_eq!(m.edge_count, 6);
        assert_eq!(m.num_components, 1);
        assert!((m.mean_degree - 2.0).abs() < 1e-12);
        // cycle of 6: distances 1,1,2,2,3 from each node
        assert!((m.avg_path_length - 9.0 / 5.0).abs() < 1e-12);

        let mut len = 0;
        egs_network_link_ids(net, ptr::null_mut(), 0, &mut len);
        let mut ids = vec![0u64; len];
        assert_eq!(
            egs_network_link_ids(net, ids.as_mut_ptr(), len, &mut len),
            EgsStatus::Ok
        );
        for id in ids {
            let mut link = std::mem::zeroed::<EgsLink>();
            assert_eq!(egs_network_link(net, id, &mut link), EgsStatus::Ok);
            assert!(link.a < link.b);
            assert_eq!(link.lambda2, 0.5);
        }

        let egraph = take_string({
            let mut s = ptr::null_mut();
            assert_eq!(egs_network_egraph_json(net, &mut s), EgsStatus::Ok);
            s
        });
        let v: serde_json::Value = serde_json::from_str(&egraph).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);

        egs_network_free(net);
        egs_swap_mode_free(mode);
        egs_plan_free(p);
    }
}

#[test]
fn manual_swaps_follow_closed_form() {
    let mut net = ptr::null_mut();
    let mode = egs_swap_mode_average();
    unsafe {
        assert_eq!(egs_network_new(3, &mut net), EgsStatus::Ok);
        let (mut a, mut b) = (0, 0);
        assert_eq!(
            egs_network_add_local_link(net, 0, 0.25, &mut a),
            EgsStatus::Ok
        );
        assert_eq!(
            egs_network_add_local_link(net, 1, 0.25, &mut b),
            EgsStatus::Ok
        );

        // swapping at an end node is rejected and leaves the network untouched
        let mut rec = std::mem::zeroed::<EgsSwapRecord>();
        assert_eq!(
            egs_network_swap(net, mode, 0, a, b, &mut rec),
            EgsStatus::SwapRejected
        );
        assert_eq!(egs_network_link_count(net), 2);
        assert_eq!(
            egs_network_swap(net, mode, 1, a, a, &mut rec),
            EgsStatus::SwapRejected
        );

        assert_eq!(
            egs_network_swap(net, mode, 1, a, b, &mut rec),
            EgsStatus::Ok
        );
        assert!(!rec.has_outcome);
        let mut link = std::mem::zeroed::<EgsLink>();
        assert_eq!(
            egs_network_link(net, rec.produced, &mut link),
            EgsStatus::Ok
        );
        assert_eq!((link.a, link.b), (0, 2));
        // min(2*0.25, 2*0.25) = 0.5 concurrence
        assert!((2.0 * link.lambda2 - 0.5).abs() < 1e-12);

        assert_eq!(egs_network_link(net, a, &mut link), EgsStatus::MissingLink);
        assert_eq!(egs_network_destroy_link(net, rec.produced), EgsStatus::Ok);
        assert_eq!(
            egs_network_destroy_link(net, rec.produced),
            EgsStatus::MissingLink
        );
        assert!(last_error().contains(&rec.produced.to_string()));

        let mut ledger = EgsLedger::default();
        egs_network_ledger(net, &mut ledger);
        assert_eq!(
            ledger,
            EgsLedger {
                initial_links_created: 2,
                swaps_performed: 1,
                links_destroyed: 1,
                live_links: 0
            }
        );
        egs_network_free(net);
        egs_swap_mode_free(mode);
    }
}

#[test]
fn sampled_swaps_report_outcomes() {
    let mut net = ptr::null_mut();
    let mode = egs_swap_mode_sampled(11);
    unsafe {
        egs_network_new(3, &mut net);
        let (mut a, mut b) = (0, 0);
        egs_network_add_local_link(net, 0, 0.1, &mut a);
        egs_network_add_local_link(net, 1, 0.3, &mut b);
        let mut rec = std::mem::zeroed::<EgsSwapRecord>();
        assert_eq!(
            egs_network_swap(net, mode, 1, a, b, &mut rec),
            EgsStatus::Ok
        );
        assert!(rec.has_outcome);

        let mut table = [std::mem::zeroed::<EgsBellOutcome>(); 4];
        assert_eq!(
            egs_swap_outcomes(0.1, 0.3, table.as_mut_ptr()),
            EgsStatus::Ok
        );
        let row = table.iter().find(|o| o.label == rec.outcome).unwrap();
        assert!(row.probability > 0.0);
        let mut link = std::mem::zeroed::<EgsLink>();
        egs_network_link(net, rec.produced, &mut link);
        assert!((link.lambda2 - row.lambda2).abs() < 1e-15);
        egs_network_free(net);
        egs_swap_mode_free(mode);
    }
}

#[test]
fn swap_outcome_table_values() {
    let mut table = [unsafe { std::mem::zeroed::<EgsBellOutcome>() }; 4];
    unsafe {
        assert_eq!(
            egs_swap_outcomes(0.25, 0.25, table.as_mut_ptr()),
            EgsStatus::Ok
        );
    }
    let labels: Vec<_> = table.iter().map(|o| o.label).collect();
    assert_eq!(
        labels,
        [
            EgsBellLabel::PsiPlus,
            EgsBellLabel::PsiMinus,
            EgsBellLabel::PhiPlus,
            EgsBellLabel::PhiMinus
        ]
    );
    // Psi: (0.75^2 + 0.25^2)/2, weights (9, 1)/10; Phi: 2*0.75*0.25/2, maximal
    for o in &table[..2] {
        assert!((o.probability - 0.3125).abs() < 1e-15);
        assert!((o.lambda2 - 0.1).abs() < 1e-15);
    }
    for o in &table[2..] {
        assert!((o.probability - 0.1875).abs() < 1e-15);
        assert!((o.lambda2 - 0.5).abs() < 1e-15);
    }
    let mut scp = 0.0;
    unsafe {
        assert_eq!(egs_average_scp(0.25, 0.25, &mut scp), EgsStatus::Ok);
        assert_eq!(
            egs_swap_outcomes(0.7, 0.1, table.as_mut_ptr()),
            EgsStatus::InvalidArgument
        );
    }
    assert!((scp - 0.5).abs() < 1e-15);
    assert!(last_error().contains("0.7"));
}

#[test]
fn formulas() {
    let mut v = 0;
    unsafe {
        assert_eq!(egs_formula_ring(7, &mut v), EgsStatus::Ok);
        assert_eq!(v, 14);
        assert_eq!(egs_formula_lattice(3, &mut v), EgsStatus::Ok);
        assert_eq!(v, 24);
        assert_eq!(egs_formula_hierarchical(9, &mut v), EgsStatus::Ok);
        assert_eq!(v, 36);
        assert_eq!(
            egs_formula_hierarchical(10, &mut v),
            EgsStatus::InvalidArgument
        );
        assert_eq!(egs_formula_lattice(64, &mut v), EgsStatus::OutOfRange);
        let (mut num, mut den) = (0, 0);
        assert_eq!(egs_avg_links_per_edge(8, &mut num, &mut den), EgsStatus::Ok);
        assert_eq!((num, den), (3, 1));
        assert_eq!(
            egs_avg_links_per_edge(10, &mut num, &mut den),
            EgsStatus::Ok
        );
        assert_eq!((num, den), (11, 3));
    }
}

#[test]
fn errors_and_null_handles() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(egs_plan_ring(2, &mut p), EgsStatus::InvalidArgument);
        assert!(p.is_null());
        assert!(last_error().contains("ring"));
        assert_eq!(egs_plan_ring(5, ptr::null_mut()), EgsStatus::NullPointer);
        assert_eq!(egs_plan_predicted_cost(ptr::null()), 0);
        let mut s = ptr::null_mut();
        assert_eq!(
            egs_plan_to_json(ptr::null(), &mut s),
            EgsStatus::NullPointer
        );
        assert_eq!(
            egs_plan_from_json(ptr::null(), &mut p),
            EgsStatus::NullPointer
        );
        let bad = CString::new("{\"num_nodes\": 3").unwrap();
        assert_eq!(
            egs_plan_from_json(bad.as_ptr(), &mut p),
            EgsStatus::Serialization
        );
        let mut net = ptr::null_mut();
        assert_eq!(egs_network_chain(4, 1, &mut net), EgsStatus::Ok);
        assert_eq!(
            egs_network_add_local_link(net, 3, 0.5, ptr::null_mut()),
            EgsStatus::OutOfRange
        );
        assert_eq!(
            egs_network_add_local_link(net, 0, 0.6, ptr::null_mut()),
            EgsStatus::InvalidArgument
        );
        egs_network_free(net);
        egs_plan_free(ptr::null_mut());
        egs_network_free(ptr::null_mut());
        egs_swap_mode_free(ptr::null_mut());
        egs_string_free(ptr::null_mut());

        let name = CStr::from_ptr(egs_status_name(EgsStatus::SwapRejected));
        assert_eq!(name.to_str().unwrap(), "swap rejected");
        assert_eq!(
            CStr::from_ptr(egs_version()).to_str().unwrap(),
            env!("CARGO_PKG_VERSION")
        );
    }
}

#[test]
fn json_round_trips() {
    let p = plan(|o| unsafe { egs_plan_random(12, 0.4, 9, o) });
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(egs_plan_to_json(p, &mut s), EgsStatus::Ok);
        let json = CString::new(take_string(s)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(egs_plan_from_json(json.as_ptr(), &mut back), EgsStatus::Ok);
        assert_eq!(egs_plan_predicted_cost(back), egs_plan_predicted_cost(p));
        assert_eq!(egs_plan_swap_count(back), egs_plan_swap_count(p));

        let mode = egs_swap_mode_sampled(4);
        let mut net = ptr::null_mut();
        assert_eq!(egs_plan_execute(back, mode, &mut net), EgsStatus::Ok);
        assert_eq!(egs_network_link_count(net), egs_plan_edge_count(p));
        let mut s = ptr::null_mut();
        assert_eq!(egs_network_to_json(net, &mut s), EgsStatus::Ok);
        let json = CString::new(take_string(s)).unwrap();
        let mut copy = ptr::null_mut();
        assert_eq!(
            egs_network_from_json(json.as_ptr(), &mut copy),
            EgsStatus::Ok
        );
        assert_eq!(egs_network_link_count(copy), egs_network_link_count(net));

        let target = CString::new(r#"{"num_nodes":4,"edges":[[0,3],[1,2]],"name":"t"}"#).unwrap();
        let mut custom = ptr::null_mut();
        assert_eq!(
            egs_plan_for_target_json(target.as_ptr(), &mut custom),
            EgsStatus::Ok
        );
        assert_eq!(egs_plan_predicted_cost(custom), 4);

        for h in [p, back, custom] {
            egs_plan_free(h);
        }
        egs_network_free(net);
        egs_network_free(copy);
        egs_swap_mode_free(mode);
    }
}

#[test]
fn prune_then_lattice_plans() {
    let p = plan(|o| unsafe { egs_plan_lattice(3, EgsLatticeEmbedding::Snake, o) });
    let h = plan(|o| unsafe { egs_plan_hierarchical(3, o) });
    unsafe {
        assert_eq!(egs_plan_edge_count(p), 12);
        assert_eq!(egs_plan_predicted_cost(h), 8 * 4);
        let mode = egs_swap_mode_ideal();
        let mut net = ptr::null_mut();
        egs_plan_execute(p, mode, &mut net);
        let mut destroyed = 0;
        assert_eq!(
            egs_network_prune(net, 0.0, 1, &mut destroyed),
            EgsStatus::Ok
        );
        assert_eq!(destroyed, 12);
        assert_eq!(egs_network_link_count(net), 0);
        assert_eq!(
            egs_network_prune(net, 1.5, 1, ptr::null_mut()),
            EgsStatus::InvalidArgument
        );
        egs_network_free(net);
        egs_swap_mode_free(mode);
        egs_plan_free(p);
        egs_plan_free(h);
    }
}
