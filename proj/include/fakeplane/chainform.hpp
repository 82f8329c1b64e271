#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fakeplane {

struct ChainSymmetry {
    enum class Kind { Trivial, ReversalFixingComponent, ReversalFixingEdge };
    Kind kind = Kind::Trivial;
    std::size_t index = 0;  // fixed component, or left end of the fixed edge

    bool operator==(const ChainSymmetry&) const = default;
};

struct WeightedChain {
    std::vector<long long> weights;
    ChainSymmetry symmetry;

    bool operator==(const WeightedChain&) const = default;

    static WeightedChain plain(std::vector<long long> w);
    // Reversal symmetry with the descriptor forced by the parity of the length; throws
    // Error(BreaksSymmetry) unless the weights form a palindrome.
    static WeightedChain symmetric(std::vector<long long> w);

    std::size_t size() const { return weights.size(); }
    bool is_symmetric() const { return symmetry.kind != ChainSymmetry::Kind::Trivial; }
    // Throws Error(BreaksSymmetry) if the descriptor does not match the weights.
    void validate() const;
    std::string to_string() const;
};

struct ChainMove {
    enum class Kind { BlowInner, BlowTip, Contract, Complexify };
    enum class End { Left, Right };
    Kind kind = Kind::Contract;
    std::size_t index = 0;  // BlowInner: edge (index, index + 1); Contract: component
    End end = End::Right;   // BlowTip
    bool mirrored = false;  // also apply the mirror image under the reversal symmetry

    static ChainMove blow_inner(std::size_t i, bool mirrored = false);
    static ChainMove blow_tip(End e, bool mirrored = false);
    static ChainMove contract(std::size_t i, bool mirrored = false);
    // Forget the reversal symmetry: later moves may act on one side only.
    static ChainMove complexify();

    bool operator==(const ChainMove&) const = default;
    std::string to_string() const;
};

WeightedChain apply_move(const WeightedChain& c, const ChainMove& m);
WeightedChain apply_moves(WeightedChain c, const std::vector<ChainMove>& moves);

// The move undoing m on c, when one exists (contracting an isolated curve has none).
std::optional<ChainMove> inverse_move(const WeightedChain& c, const ChainMove& m);

// Change of sum(weights) + 3 * length caused by m on c.
long long move_delta(const WeightedChain& c, const ChainMove& m);

struct PalindromeType {
    enum class Kind { None, TypeI, TypeII, TypeIII, PalindromeOther };
    Kind kind = Kind::None;
    std::vector<long long> e;

    bool operator==(const PalindromeType&) const = default;
    std::string to_string() const;
};

PalindromeType palindrome_type(const std::vector<long long>& weights);

struct ChainNormalForm {
    WeightedChain chain;
    std::vector<ChainMove> moves;
    PalindromeType tail;  // classification of the part after the first two components
};

// True for [0, -1] followed by nothing, a single 0, or weights all <= -2.
bool is_real_normal_shape(const std::vector<long long>& w);

std::size_t chain_search_budget();

ChainNormalForm normalize_chain_real(const WeightedChain& c);
ChainNormalForm normalize_chain_conjugate(const WeightedChain& c);

}  // namespace fakeplane
