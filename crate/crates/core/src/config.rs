/// Resource caps. Exceeding any of them yields [`crate::Error::Resource`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest coset table built by coset actions and cores.
    pub coset_index: usize,
    /// Largest orbit of a point subset explored by set stabilizers.
    pub subset_orbit: usize,
    /// Largest group whose elements are enumerated one by one.
    pub element_enumeration: u128,
    /// Largest group handled by socle and normal-subgroup scans.
    pub small_group: u128,
    /// Largest degree accepted by the maximal-intransitive sweep.
    pub subset_sweep_degree: usize,
    /// Largest number of point subsets visited by that sweep.
    pub subset_sweep_total: u64,
    /// Largest degree of a product-action wreath permutation.
    pub product_degree: usize,
    /// Index bound for brute-force subgroup conjugacy tests.
    pub conjugacy_index: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            coset_index: 200_000,
            subset_orbit: 200_000,
            element_enumeration: 2_000_000,
            small_group: 10_000_000,
            subset_sweep_degree: 30,
            subset_sweep_total: 1 << 24,
            product_degree: 1_000_000,
            conjugacy_index: 10_000,
        }
    }
}
