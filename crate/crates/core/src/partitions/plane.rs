use super::Partition;

/// Number of plane partitions of `n`, by exhaustive enumeration.
///
/// A plane partition is viewed as its nested level sets: the cells of height
/// at least `h` form a partition `π_h`, with `π_1 ⊇ π_2 ⊇ …`. The search
/// chooses the layers top-down from the bottom one, pruning on the remaining
/// box budget.
pub fn count_plane_partitions(n: i64) -> u64 {
    fn layers_within(budget: i64, bound: Option<&Partition>) -> u64 {
        let mut total = 1;
        for size in 1..=budget {
            for layer in super::partitions_of(size) {
                if bound.is_none_or(|b| b.contains(&layer)) {
                    total += layers_within(budget - size, Some(&layer));
                }
            }
        }
        total
    }
    if n < 0 {
        return 0;
    }
    // layers_within counts stacks of at most `n` boxes; difference isolates exactly `n`.
    let at_most = |k: i64| if k < 0 { 0 } else { layers_within(k, None) };
    at_most(n) - at_most(n - 1)
}
