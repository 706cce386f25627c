use crate::error::{Error, Result};
use crate::field::CycNumber;
use crate::scalar::Scalar;
use crate::tower::{AlgElement, Subalgebra, Tower};

/// A product of braid generators, with the word it came from.
///
/// Letters are signed: `i` stands for `g_i`, `-i` for `g_i⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidElement<F: Scalar> {
    pub element: AlgElement<F>,
    pub word: Vec<i32>,
}

impl<F: Scalar> BraidElement<F> {
    pub fn level(&self) -> usize {
        self.element.level()
    }

    /// The inverse element, read from the reversed word.
    pub fn inverse(&self, tower: &Tower<F>) -> Result<Self> {
        let word: Vec<i32> = self.word.iter().rev().map(|&l| -l).collect();
        braid_word(tower, &word, self.level())
    }
}

fn root_t<F: Scalar>(tower: &Tower<F>) -> Result<F> {
    let l = tower.graph().coxeter_number();
    let t = CycNumber::root_of_unity(l, 1)?;
    F::from_cyclotomic(&t).ok_or_else(|| {
        Error::Inconsistent("scalar type cannot represent the braid parameter".into())
    })
}

fn check_index<F: Scalar>(tower: &Tower<F>, i: usize, n: usize) -> Result<()> {
    if i == 0 || i + 1 > n || n > tower.top() {
        return Err(Error::OutOfRange {
            index: i,
            valid: format!(
                "1..={} at level {n} (tower built to {})",
                n.saturating_sub(1),
                tower.top()
            ),
        });
    }
    Ok(())
}

/// `g_i = (t+1)e_i − 1` with `t = ζ_ℓ`, or its inverse `(t̄+1)e_i − 1`,
/// as an element of `A_n`.
pub fn braid_generator<F: Scalar>(
    tower: &Tower<F>,
    i: usize,
    n: usize,
    inverse: bool,
) -> Result<BraidElement<F>> {
    check_index(tower, i, n)?;
    let mut t = root_t(tower)?;
    if inverse {
        t = t.conj();
    }
    let e = tower.jones(i, n)?;
    let one = tower.identity(n)?;
    let element = e.scale(&(t + F::one())).sub(&one);
    let letter = if inverse { -(i as i32) } else { i as i32 };
    Ok(BraidElement {
        element,
        word: vec![letter],
    })
}

/// The product of the letters of `word`, left to right, in `A_n`.
pub fn braid_word<F: Scalar>(tower: &Tower<F>, word: &[i32], n: usize) -> Result<BraidElement<F>> {
    let mut acc = tower.identity(n)?;
    for &l in word {
        let g = braid_generator(tower, l.unsigned_abs() as usize, n, l < 0)?;
        acc = acc.mul(&g.element);
    }
    Ok(BraidElement {
        element: acc,
        word: word.to_vec(),
    })
}

/// `v_n = g_1⋯g_n` (or `w_n = g_1⁻¹⋯g_n⁻¹` when `inverse`), in `A_{n+1}`.
pub fn shift_element<F: Scalar>(
    tower: &Tower<F>,
    n: usize,
    inverse: bool,
) -> Result<BraidElement<F>> {
    let word: Vec<i32> = (1..=n as i32)
        .map(|i| if inverse { -i } else { i })
        .collect();
    braid_word(tower, &word, n + 1)
}

/// The two conjugated towers `P_{n+1} = v_n A_n v_n*` and
/// `Q_{n+1} = w_n A_n w_n*`.
pub struct ConjugatedTowers<F: Scalar> {
    /// `v_n` for `n = 0..=depth` (`v_0 = 1` in `A_1`).
    pub v: Vec<BraidElement<F>>,
    pub w: Vec<BraidElement<F>>,
    /// `P_{n+1}` for `n = 0..=depth`.
    pub p_floors: Vec<Subalgebra<F>>,
    pub q_floors: Vec<Subalgebra<F>>,
}

impl<F: Scalar> ConjugatedTowers<F> {
    /// `P_k` as a subalgebra of `A_k` (`k ≥ 1`).
    pub fn p(&self, k: usize) -> &Subalgebra<F> {
        &self.p_floors[k - 1]
    }

    pub fn q(&self, k: usize) -> &Subalgebra<F> {
        &self.q_floors[k - 1]
    }
}

/// Builds `v_n`, `w_n` and the floors `P_{n+1}`, `Q_{n+1}` for
/// `n ≤ depth`, checking the shift identity `v_n e_i v_n⁻¹ = e_{i+1}`
/// (and likewise for `w_n`) for `1 ≤ i ≤ n−1` on the way.
pub fn conjugated_towers<F: Scalar>(tower: &Tower<F>, depth: usize) -> Result<ConjugatedTowers<F>> {
    if depth + 1 > tower.top() {
        return Err(Error::LevelMismatch(depth + 1, tower.top()));
    }
    let mut out = ConjugatedTowers {
        v: Vec::new(),
        w: Vec::new(),
        p_floors: Vec::new(),
        q_floors: Vec::new(),
    };
    for n in 0..=depth {
        let v = shift_element(tower, n, false)?;
        let w = shift_element(tower, n, true)?;
        let v_inv = v.inverse(tower)?;
        let w_inv = w.inverse(tower)?;
        for i in 1..n {
            let e = tower.jones(i, n + 1)?;
            let next = tower.jones(i + 1, n + 1)?;
            if v.element.mul(&e).mul(&v_inv.element) != next
                || w.element.mul(&e).mul(&w_inv.element) != next
            {
                return Err(Error::Inconsistent(format!(
                    "shift identity fails at n = {n}, i = {i}"
                )));
            }
        }
        out.p_floors
            .push(Subalgebra::conjugated(n, v.element.clone(), v_inv.element)?);
        out.q_floors
            .push(Subalgebra::conjugated(n, w.element.clone(), w_inv.element)?);
        out.v.push(v);
        out.w.push(w);
    }
    Ok(out)
}

/// Checks `E_{A_n} ∘ E_{P_{n+1}} = E_{P_n}` on a basis of `A_{n+1}`, for the
/// P tower or (with `use_q`) the Q tower. Requires `n ≥ 1`.
pub fn is_commuting_square<F: Scalar>(
    tower: &Tower<F>,
    towers: &ConjugatedTowers<F>,
    n: usize,
    use_q: bool,
) -> Result<bool> {
    if n == 0 || n + 1 > towers.p_floors.len() {
        return Err(Error::OutOfRange {
            index: n,
            valid: format!("1..={}", towers.p_floors.len().saturating_sub(1)),
        });
    }
    let (upper, lower) = if use_q {
        (towers.q(n + 1), towers.q(n))
    } else {
        (towers.p(n + 1), towers.p(n))
    };
    for (a, b) in tower.matrix_units(n + 1)? {
        let x = tower.unit(n + 1, a, b)?;
        let lhs = tower.conditional_expectation(
            &tower.conditional_expectation(&x, upper)?,
            &Subalgebra::Floor(n),
        )?;
        let rhs = tower.conditional_expectation(&x, lower)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_graph, Kind};
    use crate::tower::ExactTower;

    fn d5() -> ExactTower {
        let g = build_graph(Kind::D, 5).unwrap();
        let mut t = Tower::full(&g).unwrap();
        t.ensure_level(4).unwrap();
        t
    }

    #[test]
    fn generator_times_inverse_is_one() {
        let t = d5();
        for i in 1..4 {
            let g = braid_generator(&t, i, 4, false).unwrap();
            let h = braid_generator(&t, i, 4, true).unwrap();
            assert_eq!(g.element.mul(&h.element), t.identity(4).unwrap());
            assert_eq!(h.element.mul(&g.element), t.identity(4).unwrap());
            assert_eq!(t.adjoint(&g.element).unwrap(), h.element);
        }
    }

    #[test]
    fn braid_relation_on_d5() {
        let t = d5();
        let a = braid_word(&t, &[1, 2, 1], 3).unwrap();
        let b = braid_word(&t, &[2, 1, 2], 3).unwrap();
        assert_eq!(a.element, b.element);
        let c = braid_word(&t, &[1, 3], 4).unwrap();
        let d = braid_word(&t, &[3, 1], 4).unwrap();
        assert_eq!(c.element, d.element);
    }

    #[test]
    fn index_out_of_range() {
        let t = d5();
        assert!(braid_generator(&t, 0, 3, false).is_err());
        assert!(braid_generator(&t, 3, 3, false).is_err());
        assert!(braid_generator(&t, 1, 9, false).is_err());
    }

    #[test]
    fn delta_one_generator_is_an_involution_up_to_phase() {
        // ℓ = 3: g_1 is t on the range of e_1 and −1 on its complement
        let g = build_graph(Kind::A, 2).unwrap();
        let mut t: ExactTower = Tower::full(&g).unwrap();
        t.ensure_level(2).unwrap();
        let g1 = braid_generator(&t, 1, 2, false).unwrap().element;
        let e1 = t.jones(1, 2).unwrap();
        let zeta = CycNumber::root_of_unity(3, 1).unwrap();
        assert_eq!(g1.mul(&e1), e1.scale(&zeta));
        let one = t.identity(2).unwrap();
        assert_eq!(g1.mul(&one.sub(&e1)), e1.sub(&one));
    }
}
