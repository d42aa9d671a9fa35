use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdc72::fixtures::table1;
use sdc72::neighbour::chain;
use sdc72::{build_generator, intersection_dim, neighbour, BitVector, Error};

fn random_even(rng: &mut ChaCha8Rng) -> BitVector {
    let mut x = BitVector::from_words(72, vec![rng.gen(), rng.gen()]);
    if x.weight() % 2 == 1 {
        x.flip(71);
    }
    x
}

#[test]
fn neighbours_of_listed_codes_are_self_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for row in table1().into_iter().skip(1) {
        let c = build_generator(row.family, &row.seed).unwrap();
        for _ in 0..200 {
            let x = random_even(&mut rng);
            if c.contains(&x) {
                continue;
            }
            let d = neighbour(&c, &x).unwrap();
            assert!(d.is_self_dual());
            assert!(d.contains(&x));
            assert_eq!(intersection_dim(&c, &d).unwrap(), 35);
        }
    }
}

#[test]
fn codewords_and_odd_vectors_are_rejected() {
    let row = &table1()[1];
    let c = build_generator(row.family, &row.seed).unwrap();
    let inside = c.generator().row(0).add(c.generator().row(5)).unwrap();
    assert!(matches!(neighbour(&c, &inside), Err(Error::NotProperNeighbour)));
    let mut odd = BitVector::zeros(72);
    odd.set(3, true);
    assert!(matches!(neighbour(&c, &odd), Err(Error::NotIsotropic)));
}

#[test]
fn chains_of_depth_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let row = &table1()[2];
    let c = build_generator(row.family, &row.seed).unwrap();
    let xs: Vec<BitVector> = (0..3).map(|_| random_even(&mut rng)).collect();
    let steps = chain(&c, &xs).unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[0].parent_fingerprint, c.fingerprint());
    for w in steps.windows(2) {
        assert_eq!(w[1].parent_fingerprint, w[0].child.fingerprint());
        assert_eq!(intersection_dim(&w[0].child, &w[1].child).unwrap(), 35);
    }
    assert!(steps.iter().all(|s| s.child.is_self_dual()));
    assert_eq!(steps[2].depth, 3);
}
