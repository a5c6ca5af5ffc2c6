#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace expdensity {

/// Difference sequence v_n = u(n) - u(n-1), n = 2..max_index().
/// Values derived from a characteristic function u satisfy the telescoping
/// invariant: 1 + sum_{k<=n} v_k is 0 or 1 for every n. Raw construction is
/// allowed so the coefficient polynomials can be evaluated at free points.
class VSeq {
public:
    VSeq(int max_index, std::vector<int8_t> values);

    int at(int n) const; // n in [2, max_index()]
    int max_index() const { return max_index_; }

    // True iff every entry is in {-1,0,1} and all partial sums of
    // 1 + v_2 + ... + v_n stay in {0,1}.
    bool is_characteristic_difference() const;

private:
    int max_index_;
    std::vector<int8_t> v_;
};

enum class SetKind { preset, finite_list, mask };
enum class Preset { all, only1, squarefree, pow2, primes1 };

/// An admissible exponent set S (1 is always a member), described either by
/// a named preset, an explicit finite list, or a finite 0/1 mask for
/// u(2)..u(K) with u(n) = 0 beyond the mask. Immutable after construction;
/// every query is pure, so instances can be shared across threads.
class ExponentSet {
public:
    // Grammar: "preset:<name>" | "list:<int>,<int>,..." | "mask:<bitstring>"
    // where bit i (0-based) of the bitstring gives u(i+2).
    // Throws SpecError on malformed input or a list not containing 1.
    static ExponentSet parse(std::string_view spec);

    static ExponentSet make_preset(Preset p);
    static ExponentSet from_list(std::vector<uint64_t> members);
    static ExponentSet from_mask(std::vector<bool> mask_bits);

    /// Characteristic function: 1 iff n is in S. u(1) = 1 always.
    int u(uint64_t n) const;

    /// v_2..v_N computed exactly from u.
    VSeq v_seq(int n_max) const;

    SetKind kind() const { return kind_; }
    const std::string& spec_string() const { return spec_; }

    /// Largest index that can carry a nonzero v_n when u is eventually
    /// constant (finite lists, masks, preset all/only1); nullopt when the
    /// support of v is unbounded. v_n = 0 for all n > *v_support_end().
    std::optional<int> v_support_end() const;

    /// Preset names with one-line descriptions, in grammar order.
    static const std::vector<std::pair<std::string, std::string>>& preset_catalog();

private:
    ExponentSet() = default;

    SetKind kind_ = SetKind::preset;
    Preset preset_ = Preset::all;
    std::vector<uint64_t> members_; // finite-list kind, sorted, starts at 1
    std::vector<bool> mask_;        // mask kind, mask_[i] = u(i+2)
    std::string spec_;
};

} // namespace expdensity
