//! Symmetric-group and braid-group-algebra combinatorics: reduced
//! decompositions, Matsumoto lifts, braided symmetrizers, shuffle sums,
//! longest words and the shuffle elements g_{n,k}.
//!
//! Sums of braid words carry integer coefficients and compare syntactically;
//! the identities the theory provides are checked as operator identities on
//! concrete braided spaces (module `braided`), which is the faithful test
//! surface since braid relations hold for every braiding.

use std::collections::BTreeMap;
use std::fmt;

/// A permutation of 1..n, stored as its one-based image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            assert!(v >= 1 && v <= n && !seen[v], "not a permutation of 1..{}", n);
            seen[v] = true;
        }
        Perm { images }
    }

    /// The adjacent transposition s_i = (i, i+1) in S_n.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition as functions: (a * b)(x) = a(b(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        let images = other.images.iter().map(|&x| self.images[x - 1]).collect();
        Perm { images }
    }

    pub fn inverse(&self) -> Perm {
        let n = self.degree();
        let mut images = vec![0; n];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Inversion count, the length of any reduced decomposition.
    pub fn length(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Left descents: the possible first letters of reduced decompositions.
    fn left_descents(&self) -> Vec<usize> {
        let inv = self.inverse();
        (1..self.degree())
            .filter(|&i| inv.apply(i) > inv.apply(i + 1))
            .collect()
    }

    /// The longest element, k -> n-k+1.
    pub fn longest(n: usize) -> Self {
        Perm { images: (1..=n).rev().collect() }
    }

    /// All permutations of S_n in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Perm::identity(n);
        loop {
            out.push(current.clone());
            // next lexicographic permutation
            let v = &mut current.images;
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
            v.swap(i, j);
            v[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// A positive braid word c_{i_1} ... c_{i_k} on a fixed strand count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BraidWord {
    pub letters: Vec<usize>,
    pub strands: usize,
}

impl BraidWord {
    pub fn new(letters: Vec<usize>, strands: usize) -> Self {
        assert!(letters.iter().all(|&i| i >= 1 && i < strands.max(1)));
        BraidWord { letters, strands }
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord { letters: vec![], strands }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters, strands: self.strands }
    }

    pub fn reversed(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        BraidWord { letters, strands: self.strands }
    }

    pub fn shifted(&self, i: usize) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().map(|&j| j + i).collect(),
            strands: self.strands + i,
        }
    }
}

/// The canonical reduced word of p: lexicographically smallest among all
/// reduced decompositions, obtained by always taking the smallest left descent.
pub fn reduced_word(p: &Perm) -> BraidWord {
    let n = p.degree();
    let mut letters = Vec::with_capacity(p.length());
    let mut cur = p.clone();
    while !cur.is_identity() {
        let i = *cur.left_descents().first().expect("non-identity has a descent");
        letters.push(i);
        cur = Perm::transposition(n, i).compose(&cur);
    }
    BraidWord { letters, strands: n }
}

/// Every reduced decomposition of p, enumerated via left descents.
pub fn all_reduced_words(p: &Perm) -> Vec<BraidWord> {
    fn go(p: &Perm, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<BraidWord>) {
        if p.is_identity() {
            out.push(BraidWord { letters: prefix.clone(), strands: n });
            return;
        }
        for i in p.left_descents() {
            prefix.push(i);
            let rest = Perm::transposition(n, i).compose(p);
            go(&rest, n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(p, p.degree(), &mut Vec::new(), &mut out);
    out
}

/// The Matsumoto lift of a permutation: the braid word of its canonical
/// reduced decomposition. Independence of the chosen decomposition is a
/// theorem, verified semantically through operator evaluation.
pub fn matsumoto(p: &Perm) -> BraidWord {
    reduced_word(p)
}

/// Formal integer-coefficient sum of positive braid words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidSum {
    pub strands: usize,
    terms: BTreeMap<BraidWord, i64>,
}

impl BraidSum {
    pub fn zero(strands: usize) -> Self {
        BraidSum { strands, terms: BTreeMap::new() }
    }

    pub fn unit(strands: usize) -> Self {
        Self::from_word(BraidWord::empty(strands))
    }

    pub fn from_word(w: BraidWord) -> Self {
        let strands = w.strands;
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        BraidSum { strands, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BraidWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, w: BraidWord, coeff: i64) {
        assert_eq!(w.strands, self.strands);
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if coeff != 0 {
                    e.insert(coeff);
                }
            }
        }
    }

    pub fn add(&self, other: &BraidSum) -> BraidSum {
        assert_eq!(self.strands, other.strands);
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> BraidSum {
        if k == 0 {
            return BraidSum::zero(self.strands);
        }
        BraidSum {
            strands: self.strands,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Formal product: concatenation of words, distributed over both sums.
    pub fn mul(&self, other: &BraidSum) -> BraidSum {
        assert_eq!(self.strands, other.strands);
        let mut out = BraidSum::zero(self.strands);
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// The algebra antimorphism fixing the generators: reverses every word.
    pub fn reversed(&self) -> BraidSum {
        let mut out = BraidSum::zero(self.strands);
        for (w, c) in self.terms() {
            out.add_term(w.reversed(), c);
        }
        out
    }

    /// shift_i: c_j -> c_{j+i}, adding i strands.
    pub fn shifted(&self, i: usize) -> BraidSum {
        let mut out = BraidSum::zero(self.strands + i);
        for (w, c) in self.terms() {
            out.add_term(w.shifted(i), c);
        }
        out
    }

    /// View the sum on a larger strand count (B_n embeds in B_m for m >= n).
    pub fn widened(&self, strands: usize) -> BraidSum {
        assert!(strands >= self.strands);
        let mut out = BraidSum::zero(strands);
        for (w, c) in self.terms() {
            out.add_term(BraidWord { letters: w.letters.clone(), strands }, c);
        }
        out
    }

    /// The algebra morphism psi with psi(c_j) = c_{n-j}, n the strand count.
    pub fn flipped(&self) -> BraidSum {
        let n = self.strands;
        let mut out = BraidSum::zero(n);
        for (w, c) in self.terms() {
            let letters = w.letters.iter().map(|&j| n - j).collect();
            out.add_term(BraidWord { letters, strands: n }, c);
        }
        out
    }
}

/// All k-shuffles in S_{k+l}: ascending on the first k slots and on the last l.
pub fn shuffle_perms(k: usize, l: usize) -> Vec<Perm> {
    let n = k + l;
    let mut out = Vec::new();
    // choose the ascending value set of the first block
    let mut subset: Vec<usize> = (1..=k).collect();
    loop {
        let mut images = subset.clone();
        let chosen: Vec<bool> = {
            let mut c = vec![false; n + 1];
            for &v in &subset {
                c[v] = true;
            }
            c
        };
        images.extend((1..=n).filter(|&v| !chosen[v]));
        out.push(Perm::from_images(images));
        if k == 0 {
            break;
        }
        // next k-subset of 1..=n
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < n - (k - 1 - i) {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}

/// The braided symmetrizer S_n: the sum of Matsumoto lifts of all of S_n.
pub fn symmetrizer(n: usize) -> BraidSum {
    symmetrizer_cached(n).as_ref().clone()
}

/// Shared handle to S_n; building the n! lifts is costly enough to memoize.
pub fn symmetrizer_cached(n: usize) -> std::sync::Arc<BraidSum> {
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<std::collections::HashMap<usize, Arc<BraidSum>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Default::default()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut out = BraidSum::zero(n);
    for p in Perm::all(n) {
        out.add_term(matsumoto(&p), 1);
    }
    let arc = Arc::new(out);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// S_{k,l}: the sum of c_{pi^{-1}} over the k-shuffles of S_{k+l}.
pub fn shuffle_sum(k: usize, l: usize) -> BraidSum {
    let mut out = BraidSum::zero(k + l);
    for p in shuffle_perms(k, l) {
        out.add_term(matsumoto(&p.inverse()), 1);
    }
    out
}

/// The longest word omega_n = (c_{n-1})(c_{n-2}c_{n-1})...(c_1...c_{n-1}).
pub fn longest_word(n: usize) -> BraidWord {
    let mut letters = Vec::new();
    if n >= 2 {
        for start in (1..n).rev() {
            letters.extend(start..n);
        }
    }
    BraidWord { letters, strands: n }
}

/// The index set behind g_{n,k}: permutations of S_{n+1} ascending on the
/// first n-k slots, peaking at n+1, then strictly descending.
pub fn gnk_perms(n: usize, k: usize) -> Vec<Perm> {
    assert!(k <= n);
    let size = n + 1;
    let asc = n - k;
    let mut out = Vec::new();
    // choose the ascending value set from 1..=n
    let mut subset: Vec<usize> = (1..=asc).collect();
    loop {
        let mut images = subset.clone();
        images.push(size);
        let chosen: Vec<bool> = {
            let mut c = vec![false; size + 1];
            for &v in &subset {
                c[v] = true;
            }
            c
        };
        images.extend((1..=n).rev().filter(|&v| !chosen[v]));
        out.push(Perm::from_images(images));
        if asc == 0 {
            break;
        }
        let mut i = asc;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < n - (asc - 1 - i) {
                subset[i] += 1;
                for j in i + 1..asc {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}

/// g_{n,k} from its defining enumeration; zero for k outside 0..=n.
pub fn gnk_def(n: usize, k: i64) -> BraidSum {
    if k < 0 || k as usize > n {
        return BraidSum::zero(n + 1);
    }
    let mut out = BraidSum::zero(n + 1);
    for p in gnk_perms(n, k as usize) {
        out.add_term(matsumoto(&p.inverse()), 1);
    }
    out
}

/// g_{n,k} in factored form: shift_{n-k}(omega_{k+1}) * S_{n-k,k},
/// expanded formally.
pub fn gnk_factored(n: usize, k: usize) -> Result<BraidSum, String> {
    if k > n {
        return Err(format!("g_{{{n},{k}}}: k out of range"));
    }
    let omega = BraidSum::from_word(longest_word(k + 1)).shifted(n - k);
    let shuffles = shuffle_sum(n - k, k).widened(n + 1);
    Ok(omega.mul(&shuffles))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let p = Perm::from_images(vec![3, 1, 2]);
        assert_eq!(p.inverse().images(), &[2, 3, 1]);
        assert_eq!(p.length(), 2);
        assert_eq!(Perm::all(4).len(), 24);
        let s1 = Perm::transposition(3, 1);
        let s2 = Perm::transposition(3, 2);
        // (s2 s1)(1) = s2(2) = 3
        assert_eq!(s2.compose(&s1).apply(1), 3);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(reduced_word(&Perm::identity(4)).letters.is_empty());
        assert_eq!(reduced_word(&Perm::transposition(2, 1)).letters, vec![1]);
        // longest element of S_3: both reduced words enumerate to {121, 212},
        // lexicographic minimum is 121
        let w0 = Perm::longest(3);
        let all: Vec<Vec<usize>> = all_reduced_words(&w0).into_iter().map(|w| w.letters).collect();
        assert_eq!(all.len(), 2);
        assert!(all.contains(&vec![1, 2, 1]));
        assert!(all.contains(&vec![2, 1, 2]));
        assert_eq!(reduced_word(&w0).letters, vec![1, 2, 1]);
    }

    #[test]
    fn reduced_words_have_minimal_length() {
        for p in Perm::all(5) {
            assert_eq!(reduced_word(&p).letters.len(), p.length());
        }
    }

    #[test]
    fn matsumoto_examples() {
        assert!(matsumoto(&Perm::identity(5)).letters.is_empty());
        // s_2 s_1 in S_3 has the unique reduced word (2, 1)
        let p = Perm::transposition(3, 2).compose(&Perm::transposition(3, 1));
        assert_eq!(all_reduced_words(&p).len(), 1);
        assert_eq!(matsumoto(&p).letters, vec![2, 1]);
    }

    #[test]
    fn shuffle_examples() {
        // S_{2,1} = { id, (23), (123) }
        let s21: Vec<Vec<usize>> = shuffle_perms(2, 1).iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(s21.len(), 3);
        assert!(s21.contains(&vec![1, 2, 3])); // id
        assert!(s21.contains(&vec![1, 3, 2])); // (23)
        assert!(s21.contains(&vec![2, 3, 1])); // (123): 1->2, 2->3, 3->1
        // S_{0,3} = { id }
        let s03 = shuffle_perms(0, 3);
        assert_eq!(s03.len(), 1);
        assert!(s03[0].is_identity());
        // S_{1,1} is all of S_2
        assert_eq!(shuffle_perms(1, 1).len(), 2);
        // counts are binomials
        assert_eq!(shuffle_perms(3, 2).len(), 10);
    }

    #[test]
    fn symmetrizer_and_longest_word() {
        let s2 = symmetrizer(2);
        assert_eq!(s2.num_terms(), 2);
        let words: Vec<Vec<usize>> = s2.terms().map(|(w, _)| w.letters.clone()).collect();
        assert!(words.contains(&vec![]));
        assert!(words.contains(&vec![1]));
        assert_eq!(longest_word(3).letters, vec![2, 1, 2]);
        assert_eq!(longest_word(1).letters, Vec::<usize>::new());
        assert_eq!(longest_word(4).letters, vec![3, 2, 3, 1, 2, 3]);
        assert_eq!(symmetrizer(4).num_terms(), 24);
        // S_{1,2} has 3 terms
        assert_eq!(shuffle_sum(1, 2).num_terms(), 3);
    }

    #[test]
    fn gnk_small_golden() {
        // g_{1,1} = c_1
        let g11: Vec<Vec<usize>> = gnk_def(1, 1).terms().map(|(w, _)| w.letters.clone()).collect();
        assert_eq!(g11, vec![vec![1]]);
        // g_{2,1} = c_2 + c_2 c_1
        let g21: Vec<Vec<usize>> = gnk_def(2, 1).terms().map(|(w, _)| w.letters.clone()).collect();
        assert_eq!(g21.len(), 2);
        assert!(g21.contains(&vec![2]));
        assert!(g21.contains(&vec![2, 1]));
        // g_{n,0} = 1 for n <= 6
        for n in 0..=6 {
            let g = gnk_def(n, 0);
            assert_eq!(g.num_terms(), 1);
            assert!(g.terms().next().unwrap().0.letters.is_empty());
        }
        // term counts are binomials
        for n in 0..=6usize {
            for k in 0..=n {
                let expected = {
                    let mut b: u64 = 1;
                    for i in 0..k {
                        b = b * (n - i) as u64 / (i + 1) as u64;
                    }
                    b
                };
                assert_eq!(gnk_def(n, k as i64).num_terms() as u64, expected, "n={n} k={k}");
                assert_eq!(gnk_factored(n, k).unwrap().num_terms() as u64, expected);
            }
        }
        // out of range
        assert_eq!(gnk_def(3, -1).num_terms(), 0);
        assert_eq!(gnk_def(3, 4).num_terms(), 0);
        assert!(gnk_factored(3, 4).is_err());
    }

    #[test]
    fn gnk_factored_golden_words() {
        // g_{3,1} = c_3 (1 + c_2 + c_2 c_1)
        let g31: Vec<Vec<usize>> = gnk_factored(3, 1)
            .unwrap()
            .terms()
            .map(|(w, _)| w.letters.clone())
            .collect();
        assert_eq!(g31.len(), 3);
        assert!(g31.contains(&vec![3]));
        assert!(g31.contains(&vec![3, 2]));
        assert!(g31.contains(&vec![3, 2, 1]));
        // g_{3,3} = c_3 c_2 c_3 c_1 c_2 c_3
        let g33: Vec<Vec<usize>> = gnk_factored(3, 3)
            .unwrap()
            .terms()
            .map(|(w, _)| w.letters.clone())
            .collect();
        assert_eq!(g33, vec![vec![3, 2, 3, 1, 2, 3]]);
        // g_{1,1} = omega_2 * S_{0,1} = c_1
        let g11: Vec<Vec<usize>> = gnk_factored(1, 1)
            .unwrap()
            .terms()
            .map(|(w, _)| w.letters.clone())
            .collect();
        assert_eq!(g11, vec![vec![1]]);
    }

    #[test]
    fn reverse_and_shift() {
        let w = BraidSum::from_word(BraidWord::new(vec![1, 2], 3));
        let rev: Vec<Vec<usize>> = w.reversed().terms().map(|(w, _)| w.letters.clone()).collect();
        assert_eq!(rev, vec![vec![2, 1]]);
        let sh = BraidSum::from_word(BraidWord::new(vec![1], 2)).shifted(2);
        let sh_words: Vec<(Vec<usize>, usize)> =
            sh.terms().map(|(w, _)| (w.letters.clone(), w.strands)).collect();
        assert_eq!(sh_words, vec![(vec![3], 4)]);
    }

    #[test]
    fn braid_sum_cancellation() {
        let a = BraidSum::from_word(BraidWord::new(vec![1], 2));
        let diff = a.add(&a.scale(-1));
        assert_eq!(diff.num_terms(), 0);
    }
}
