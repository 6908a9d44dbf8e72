mod common;

use superkit::algebra::{grassmann_named, tensor_coords, AlgebraHandle};
use superkit::hopf::{check_alpha_surjective, check_hopf_axioms, coinvariants, grassmann_hopf, is_group_like, primitives, trivial_hopf, CoidealCoaction};
use superkit::linalg::{self, Subspace};
use superkit::Field;

#[test]
fn fixtures_are_hopf_superalgebras() {
    for f in [Field::Rational, Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
        for (name, h) in common::hopf_fixtures(f) {
            let r = check_hopf_axioms(&h);
            assert!(r.passed(), "{name} over {f}: {r}");
        }
    }
}

#[test]
fn grassmann_coproduct_of_the_top_monomial() {
    let q = Field::Rational;
    let h = grassmann_hopf(q, &["x", "y"]).unwrap();
    let a = h.algebra();
    let (one, x, y, xy) = (a.one(), a.basis_by_label("x").unwrap(), a.basis_by_label("y").unwrap(), &a.basis_by_label("x").unwrap() * &a.basis_by_label("y").unwrap());
    // x y ⊗ 1 + x ⊗ y - y ⊗ x + 1 ⊗ x y
    let mut want = tensor_coords(xy.coords(), one.coords());
    want = linalg::add(&want, &tensor_coords(x.coords(), y.coords()));
    want = linalg::sub(&want, &tensor_coords(y.coords(), x.coords()));
    want = linalg::add(&want, &tensor_coords(one.coords(), xy.coords()));
    assert_eq!(h.coproduct_coords(xy.coords()), want);
    assert_eq!(h.antipode_coords(xy.coords()), xy.coords().to_vec());
    let p = primitives(&h);
    assert_eq!(p, Subspace::span(q, 4, vec![x.coords().to_vec(), y.coords().to_vec()]));
    assert!(primitives(&trivial_hopf(q).unwrap()).is_zero());
}

#[test]
fn group_likes_over_coefficients() {
    let q = Field::Rational;
    let h = grassmann_hopf(q, &["v"]).unwrap();
    let r = grassmann_named(q, &["a"]).unwrap();
    let hr = superkit::algebra::tensor(h.algebra(), &r).unwrap();
    let v = h.algebra().basis_by_label("v").unwrap();
    let a = r.basis_by_label("a").unwrap();
    let one = h.algebra().one().tensor_with(&r.one(), &hr).unwrap();
    let va = v.tensor_with(&a, &hr).unwrap();
    assert!(is_group_like(&h, &one).unwrap());
    assert!(is_group_like(&h, &(&one + &va)).unwrap());
    let l = grassmann_hopf(q, &["t"]).unwrap();
    let k = grassmann_named(q, &[]).unwrap();
    let lk = superkit::algebra::tensor(l.algebra(), &k).unwrap();
    let t = l.algebra().basis_by_label("t").unwrap().tensor_with(&k.one(), &lk).unwrap();
    let one = l.algebra().one().tensor_with(&k.one(), &lk).unwrap();
    assert!(!is_group_like(&l, &(&one + &t)).unwrap());
}

#[test]
fn coinvariants_match_the_equalizer_by_enumeration() {
    let f3 = Field::prime(3).unwrap();
    for (name, h) in common::hopf_fixtures(f3) {
        if h.dim() > 8 {
            continue;
        }
        let mut coactions = vec![CoidealCoaction::regular(&h).unwrap(), CoidealCoaction::trivial(h.algebra(), &h).unwrap()];
        if h.dim() <= 4 {
            let b = grassmann_named(f3, &["b"]).unwrap();
            coactions.push(CoidealCoaction::on_right_factor(&b, &h).unwrap());
        }
        for c in coactions {
            assert_eq!(coinvariants(&c).unwrap(), common::equalizer_by_enumeration(&c), "{name}");
        }
    }
}

#[test]
fn alpha_surjectivity() {
    let q = Field::Rational;
    for (name, h) in common::hopf_fixtures(q) {
        assert!(check_alpha_surjective(&CoidealCoaction::regular(&h).unwrap()), "{name}");
        let trivial = CoidealCoaction::trivial(h.algebra(), &h).unwrap();
        assert_eq!(check_alpha_surjective(&trivial), h.dim() == 1, "{name}");
    }
    let l = grassmann_hopf(q, &["eta"]).unwrap();
    let b = grassmann_named(q, &["th"]).unwrap();
    let c = CoidealCoaction::on_right_factor(&b, &l).unwrap();
    let co = coinvariants(&c).unwrap();
    assert_eq!(co.dim(), 2);
    assert!(check_alpha_surjective(&c));
}
