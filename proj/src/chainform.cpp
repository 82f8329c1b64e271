#include "fakeplane/chainform.hpp"

#include "fakeplane/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>

namespace fakeplane {

namespace {

bool is_palindrome(const std::vector<long long>& w) { return std::equal(w.begin(), w.end(), w.rbegin()); }

ChainSymmetry descriptor_for(std::size_t len) {
    if (len % 2 == 1) return {ChainSymmetry::Kind::ReversalFixingComponent, len / 2};
    if (len == 0) return {ChainSymmetry::Kind::ReversalFixingEdge, 0};
    return {ChainSymmetry::Kind::ReversalFixingEdge, len / 2 - 1};
}

std::string join(const std::vector<long long>& w) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << "]";
    return os.str();
}

void raw_blow_inner(std::vector<long long>& w, std::size_t i) {
    if (i + 1 >= w.size())
        throw Error(ErrorKind::IndexOutOfRange, "no edge " + std::to_string(i) + " in chain of length " +
                                                    std::to_string(w.size()));
    w[i] -= 1;
    w[i + 1] -= 1;
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(i + 1), -1);
}

void raw_blow_tip(std::vector<long long>& w, ChainMove::End e) {
    if (w.empty()) throw Error(ErrorKind::IndexOutOfRange, "empty chain has no tip");
    if (e == ChainMove::End::Left) {
        w.front() -= 1;
        w.insert(w.begin(), -1);
    } else {
        w.back() -= 1;
        w.push_back(-1);
    }
}

void raw_contract(std::vector<long long>& w, std::size_t i) {
    if (i >= w.size())
        throw Error(ErrorKind::IndexOutOfRange, "no component " + std::to_string(i) + " in chain of length " +
                                                    std::to_string(w.size()));
    if (w[i] != -1)
        throw Error(ErrorKind::NotMinusOne, "component " + std::to_string(i) + " has weight " + std::to_string(w[i]));
    if (i > 0) w[i - 1] += 1;
    if (i + 1 < w.size()) w[i + 1] += 1;
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
}

void raw_apply(std::vector<long long>& w, const ChainMove& m) {
    switch (m.kind) {
        case ChainMove::Kind::BlowInner: raw_blow_inner(w, m.index); break;
        case ChainMove::Kind::BlowTip: raw_blow_tip(w, m.end); break;
        case ChainMove::Kind::Contract: raw_contract(w, m.index); break;
        case ChainMove::Kind::Complexify: break;
    }
}

bool self_mirror(const WeightedChain& c, const ChainMove& m) {
    const std::size_t n = c.size();
    switch (m.kind) {
        case ChainMove::Kind::BlowInner: return n % 2 == 0 && n >= 2 && m.index == n / 2 - 1;
        case ChainMove::Kind::Contract: return n % 2 == 1 && m.index == n / 2;
        case ChainMove::Kind::BlowTip: return false;
        case ChainMove::Kind::Complexify: return true;
    }
    return false;
}

}  // namespace

WeightedChain WeightedChain::plain(std::vector<long long> w) { return {std::move(w), {}}; }

WeightedChain WeightedChain::symmetric(std::vector<long long> w) {
    if (!is_palindrome(w)) throw Error(ErrorKind::BreaksSymmetry, join(w) + " is not a palindrome");
    WeightedChain c{std::move(w), {}};
    c.symmetry = descriptor_for(c.size());
    return c;
}

void WeightedChain::validate() const {
    if (!is_symmetric()) return;
    if (!is_palindrome(weights)) throw Error(ErrorKind::BreaksSymmetry, join(weights) + " is not a palindrome");
    if (!(symmetry == descriptor_for(size())))
        throw Error(ErrorKind::BreaksSymmetry, "symmetry descriptor does not match chain length");
}

std::string WeightedChain::to_string() const {
    std::string s = join(weights);
    switch (symmetry.kind) {
        case ChainSymmetry::Kind::Trivial: break;
        case ChainSymmetry::Kind::ReversalFixingComponent: s += " fixing component " + std::to_string(symmetry.index); break;
        case ChainSymmetry::Kind::ReversalFixingEdge: s += " fixing edge " + std::to_string(symmetry.index); break;
    }
    return s;
}

ChainMove ChainMove::blow_inner(std::size_t i, bool mirrored) { return {Kind::BlowInner, i, End::Right, mirrored}; }
ChainMove ChainMove::blow_tip(End e, bool mirrored) { return {Kind::BlowTip, 0, e, mirrored}; }
ChainMove ChainMove::contract(std::size_t i, bool mirrored) { return {Kind::Contract, i, End::Right, mirrored}; }
ChainMove ChainMove::complexify() { return {Kind::Complexify, 0, End::Right, false}; }

std::string ChainMove::to_string() const {
    std::string s;
    switch (kind) {
        case Kind::BlowInner: s = "BlowInner(" + std::to_string(index) + ")"; break;
        case Kind::BlowTip: s = std::string("BlowTip(") + (end == End::Left ? "Left" : "Right") + ")"; break;
        case Kind::Contract: s = "Contract(" + std::to_string(index) + ")"; break;
        case Kind::Complexify: s = "Complexify"; break;
    }
    if (mirrored) s += "+mirror";
    return s;
}

WeightedChain apply_move(const WeightedChain& c, const ChainMove& m) {
    c.validate();
    WeightedChain out = c;
    if (m.kind == ChainMove::Kind::Complexify) {
        out.symmetry = {};
        return out;
    }
    if (!c.is_symmetric()) {
        if (m.mirrored) throw Error(ErrorKind::BreaksSymmetry, "mirrored move on a chain without symmetry");
        raw_apply(out.weights, m);
        return out;
    }
    if (self_mirror(c, m)) {
        raw_apply(out.weights, m);
    } else {
        if (!m.mirrored)
            throw Error(ErrorKind::BreaksSymmetry, m.to_string() + " on " + c.to_string() + " needs its mirror image");
        const std::size_t n = c.size();
        ChainMove a = m, b = m;
        a.mirrored = b.mirrored = false;
        switch (m.kind) {
            case ChainMove::Kind::BlowInner:
                if (m.index + 1 >= n) throw Error(ErrorKind::IndexOutOfRange, "no edge " + std::to_string(m.index));
                b.index = n - 2 - m.index;
                break;
            case ChainMove::Kind::Contract:
                if (m.index >= n) throw Error(ErrorKind::IndexOutOfRange, "no component " + std::to_string(m.index));
                b.index = n - 1 - m.index;
                break;
            case ChainMove::Kind::BlowTip:
                b.end = m.end == ChainMove::End::Left ? ChainMove::End::Right : ChainMove::End::Left;
                break;
            case ChainMove::Kind::Complexify: break;
        }
        // Apply the move further to the right first so the other index stays valid.
        bool b_first = m.kind == ChainMove::Kind::BlowTip ? b.end == ChainMove::End::Right : b.index > a.index;
        raw_apply(out.weights, b_first ? b : a);
        raw_apply(out.weights, b_first ? a : b);
    }
    if (!is_palindrome(out.weights))
        throw Error(ErrorKind::BreaksSymmetry, m.to_string() + " on " + c.to_string() + " breaks the symmetry");
    out.symmetry = descriptor_for(out.size());
    return out;
}

WeightedChain apply_moves(WeightedChain c, const std::vector<ChainMove>& moves) {
    for (const auto& m : moves) c = apply_move(c, m);
    return c;
}

std::optional<ChainMove> inverse_move(const WeightedChain& c, const ChainMove& m) {
    if (m.kind == ChainMove::Kind::Complexify) return std::nullopt;
    const std::size_t n = c.size();
    ChainMove left = m;
    const bool pair = m.mirrored && c.is_symmetric() && !self_mirror(c, m);
    if (pair) {
        // Rewrite the pair through its left-hand member.
        if (m.kind == ChainMove::Kind::BlowInner && 2 * m.index + 2 > n) left.index = n - 2 - m.index;
        if (m.kind == ChainMove::Kind::Contract && 2 * m.index + 1 > n) left.index = n - 1 - m.index;
        if (m.kind == ChainMove::Kind::BlowTip) left.end = ChainMove::End::Left;
    }
    std::optional<ChainMove> inv;
    switch (left.kind) {
        case ChainMove::Kind::BlowInner: inv = ChainMove::contract(left.index + 1); break;
        case ChainMove::Kind::BlowTip: inv = ChainMove::contract(left.end == ChainMove::End::Left ? 0 : n); break;
        case ChainMove::Kind::Contract:
            if (n == 1) return std::nullopt;
            if (left.index == 0) inv = ChainMove::blow_tip(ChainMove::End::Left);
            else if (left.index + 1 == n) inv = ChainMove::blow_tip(ChainMove::End::Right);
            else inv = ChainMove::blow_inner(left.index - 1);
            break;
        case ChainMove::Kind::Complexify: break;
    }
    if (inv) inv->mirrored = pair;
    return inv;
}

long long move_delta(const WeightedChain& c, const ChainMove& m) {
    auto measure = [](const WeightedChain& x) {
        long long s = 0;
        for (long long w : x.weights) s += w;
        return s + 3 * static_cast<long long>(x.size());
    };
    return measure(apply_move(c, m)) - measure(c);
}

std::string PalindromeType::to_string() const {
    std::string s;
    switch (kind) {
        case Kind::None: return "None";
        case Kind::TypeI: s = "TypeI"; break;
        case Kind::TypeII: s = "TypeII"; break;
        case Kind::TypeIII: s = "TypeIII"; break;
        case Kind::PalindromeOther: return "PalindromeOther";
    }
    return s + "(e=" + join(e) + ")";
}

PalindromeType palindrome_type(const std::vector<long long>& w) {
    using K = PalindromeType::Kind;
    if (w.empty() || !is_palindrome(w)) return {K::None, {}};
    const std::size_t n = w.size();
    const std::size_t half = n / 2;
    std::vector<long long> e;
    for (std::size_t i = 0; i < half; ++i) e.push_back(-w[i]);
    bool outer_ok = std::all_of(e.begin(), e.end(), [](long long x) { return x >= 2; });
    if (!outer_ok) return {K::PalindromeOther, {}};
    if (n % 2 == 0) return {K::TypeI, e};
    if (n < 3) return {K::PalindromeOther, {}};
    long long mid = -w[half];
    if (mid % 2 == 0 && mid / 2 >= 2) {
        e.push_back(mid / 2);
        return {K::TypeII, e};
    }
    if (mid % 2 != 0 && (mid + 1) / 2 >= 2) {
        e.push_back((mid + 1) / 2);
        return {K::TypeIII, e};
    }
    return {K::PalindromeOther, {}};
}

bool is_real_normal_shape(const std::vector<long long>& w) {
    if (w.size() < 2 || w[0] != 0 || w[1] != -1) return false;
    if (w.size() == 3 && w[2] == 0) return true;
    return std::all_of(w.begin() + 2, w.end(), [](long long x) { return x <= -2; });
}

std::size_t chain_search_budget() {
    if (const char* env = std::getenv("FAKEPLANE_SEARCH_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 10000;
}

namespace {

class Rewriter {
public:
    explicit Rewriter(WeightedChain c) : chain_(std::move(c)) {}

    void move(const ChainMove& m) {
        chain_ = apply_move(chain_, m);
        moves_.push_back(m);
    }
    const std::vector<long long>& w() const { return chain_.weights; }
    const WeightedChain& chain() const { return chain_; }
    const std::vector<ChainMove>& moves() const { return moves_; }

private:
    WeightedChain chain_;
    std::vector<ChainMove> moves_;
};

std::vector<long long> tail_of(const std::vector<long long>& w) {
    return w.size() > 2 ? std::vector<long long>(w.begin() + 2, w.end()) : std::vector<long long>{};
}

std::optional<std::size_t> leftmost_nonnegative(const std::vector<long long>& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] >= 0) return i;
    return std::nullopt;
}

// Brings the second component to weight -1 by elementary transformations at the first.
void fix_second(Rewriter& r) {
    while (r.w()[1] > -1) {
        r.move(ChainMove::blow_inner(0));
        r.move(ChainMove::contract(0));
    }
    while (r.w()[1] < -1) {
        r.move(ChainMove::blow_tip(ChainMove::End::Left));
        r.move(ChainMove::contract(1));
    }
}

bool constructive(Rewriter& r) {
    while (!leftmost_nonnegative(r.w())) {
        auto it = std::find(r.w().begin(), r.w().end(), -1);
        if (it == r.w().end()) return false;
        r.move(ChainMove::contract(static_cast<std::size_t>(it - r.w().begin())));
    }
    std::size_t d = *leftmost_nonnegative(r.w());
    while (r.w()[d] > 0) {
        if (d + 1 < r.w().size()) r.move(ChainMove::blow_inner(d));
        else r.move(ChainMove::blow_tip(ChainMove::End::Right));
    }
    // Walk the 0-curve to the left end; each step raises its left neighbour by one.
    while (d > 0) {
        if (d + 1 < r.w().size()) r.move(ChainMove::blow_inner(d));
        else r.move(ChainMove::blow_tip(ChainMove::End::Right));
        r.move(ChainMove::contract(d));
        if (r.w()[d - 1] == 0) d -= 1;
    }
    if (r.w().size() < 2) return false;
    fix_second(r);
    for (;;) {
        auto it = std::find(r.w().begin() + 2, r.w().end(), -1);
        if (it == r.w().end()) break;
        r.move(ChainMove::contract(static_cast<std::size_t>(it - r.w().begin())));
        if (r.w().size() < 2) return false;
        fix_second(r);
    }
    return is_real_normal_shape(r.w());
}

using BigRational = boost::multiprecision::cpp_rational;

struct Inertia {
    std::size_t positive = 0;
    std::size_t zero = 0;
};

// Inertia of the tridiagonal intersection matrix by symmetric elimination, taking a 2x2
// pivot [[0, 1], [1, a]] (one positive and one negative eigenvalue) when a pivot vanishes.
// Blow-ups and contractions of the chain leave both counts unchanged.
Inertia inertia(const std::vector<long long>& w) {
    Inertia out;
    std::optional<BigRational> prev;
    for (std::size_t i = 0; i < w.size(); ++i) {
        BigRational x = w[i];
        if (prev) x -= 1 / *prev;
        if (x == 0) {
            if (i + 1 == w.size()) {
                ++out.zero;
                break;
            }
            ++out.positive;
            ++i;
            prev.reset();
            continue;
        }
        if (x > 0) ++out.positive;
        prev = x;
    }
    return out;
}

std::optional<std::vector<ChainMove>> search(const std::vector<long long>& start) {
    const std::size_t budget = chain_search_budget();
    std::map<std::vector<long long>, std::pair<std::vector<long long>, ChainMove>> parent;
    std::deque<std::vector<long long>> queue{start};
    parent.emplace(start, std::make_pair(start, ChainMove::complexify()));
    while (!queue.empty() && parent.size() < budget) {
        std::vector<long long> cur = queue.front();
        queue.pop_front();
        if (is_real_normal_shape(cur)) {
            std::vector<ChainMove> path;
            while (cur != start) {
                const auto& [prev, m] = parent.at(cur);
                path.push_back(m);
                cur = prev;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        std::vector<ChainMove> options;
        for (std::size_t i = 0; i < cur.size(); ++i)
            if (cur[i] == -1 && cur.size() > 1) options.push_back(ChainMove::contract(i));
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) options.push_back(ChainMove::blow_inner(i));
        if (!cur.empty()) {
            options.push_back(ChainMove::blow_tip(ChainMove::End::Left));
            options.push_back(ChainMove::blow_tip(ChainMove::End::Right));
        }
        for (const auto& m : options) {
            std::vector<long long> next = cur;
            raw_apply(next, m);
            if (parent.emplace(next, std::make_pair(cur, m)).second) queue.push_back(next);
        }
    }
    return std::nullopt;
}

}  // namespace

ChainNormalForm normalize_chain_real(const WeightedChain& c) {
    c.validate();
    if (c.is_symmetric())
        throw Error(ErrorKind::BreaksSymmetry, "the real normal form acts on chains without symmetry; complexify first");
    if (c.weights.empty() || c.weights == std::vector<long long>{0})
        throw Error(ErrorKind::NoNonnegativeComponentReachable, c.to_string() + " has no normal form");
    if (is_real_normal_shape(c.weights)) return {c, {}, palindrome_type(tail_of(c.weights))};
    Rewriter r(c);
    bool ok = false;
    try {
        ok = constructive(r);
    } catch (const Error&) {
        ok = false;
    }
    if (ok) return {r.chain(), r.moves(), palindrome_type(tail_of(r.w()))};
    const Inertia in = inertia(c.weights);
    if (in.positive != 1 || in.zero > 1)
        throw Error(ErrorKind::NoNonnegativeComponentReachable,
                    c.to_string() + " has the wrong inertia for a normal form");
    auto path = search(c.weights);
    if (!path)
        throw Error(ErrorKind::NoNonnegativeComponentReachable,
                    "no normal form for " + c.to_string() + " within " + std::to_string(chain_search_budget()) +
                        " states");
    WeightedChain out = apply_moves(c, *path);
    return {out, *path, palindrome_type(tail_of(out.weights))};
}

ChainNormalForm normalize_chain_conjugate(const WeightedChain& c) {
    c.validate();
    if (!c.is_symmetric()) throw Error(ErrorKind::UnsupportedShape, c.to_string() + " has no reversal symmetry");
    const auto& w = c.weights;
    const std::size_t n = w.size();
    auto all_le = [&](std::size_t from, std::size_t to, long long bound) {
        for (std::size_t i = from; i < to; ++i)
            if (w[i] > bound) return false;
        return true;
    };
    Rewriter r(c);

    if (w == std::vector<long long>{1, 1}) {
        r.move(ChainMove::blow_inner(0));
        return {r.chain(), r.moves(), palindrome_type(tail_of(r.w()))};
    }
    if (n == 2 && w[0] == 0) {
        r.move(ChainMove::blow_inner(0));
        r.move(ChainMove::complexify());
        r.move(ChainMove::contract(0));
        return {r.chain(), r.moves(), palindrome_type(tail_of(r.w()))};
    }
    if (n >= 4 && n % 2 == 0 && w[n / 2] == 0 && all_le(0, n / 2 - 1, -2)) {
        r.move(ChainMove::complexify());
        std::size_t k = n / 2 - 1;  // components strictly left of the 0-curve
        while (k > 0) {
            if (r.w()[k - 1] < -1) {
                r.move(ChainMove::blow_inner(k));
                r.move(ChainMove::contract(k));
            } else {
                r.move(ChainMove::blow_inner(k));
                r.move(ChainMove::contract(k - 1));
                k -= 1;
            }
        }
        return {r.chain(), r.moves(), palindrome_type(tail_of(r.w()))};
    }
    bool case_b_prime = n >= 4 && n % 2 == 0 && w[n / 2] == -1 && all_le(0, n / 2 - 1, -2);
    bool case_c = n % 2 == 1 && w[n / 2] == 0 &&
                  (n == 3 ? w[0] <= 0 && w[0] != -1 : all_le(0, n / 2 - 1, -2) && w[n / 2 - 1] <= -1);
    if (!case_b_prime && !case_c)
        throw Error(ErrorKind::UnsupportedShape, c.to_string() + " matches none of the symmetric boundary shapes");
    r.move(ChainMove::complexify());
    ChainNormalForm real = normalize_chain_real(r.chain());
    for (const auto& m : real.moves) r.move(m);
    std::vector<long long> tail = tail_of(r.w());
    if (!tail.empty() && tail != std::vector<long long>{0} && palindrome_type(tail).kind == PalindromeType::Kind::None)
        throw Error(ErrorKind::UnsupportedShape, "normal form " + r.chain().to_string() + " has a non-palindromic tail");
    return {r.chain(), r.moves(), palindrome_type(tail)};
}

}  // namespace fakeplane
