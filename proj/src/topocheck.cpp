#include "fakeplane/topocheck.hpp"

#include "fakeplane/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace fakeplane {

std::string to_string(RealVerdict v) {
    switch (v) {
        case RealVerdict::R2: return "R2";
        case RealVerdict::NotR2: return "NotR2";
        case RealVerdict::BoundaryRealLocusEmpty: return "BoundaryRealLocusEmpty";
    }
    return "?";
}

const Witness* TopologyReport::witness(const std::string& name) const {
    for (const auto& w : witnesses)
        if (w.name == name) return &w;
    return nullptr;
}

IntMatrix node_permutation(const SurfacePair& s, const std::vector<NodeRef>& nodes) {
    std::map<NodeRef, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    IntMatrix p(nodes.size(), nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto it = index.find(s.sigma_node(nodes[i]));
        if (it == index.end()) throw Error(ErrorKind::NotSigmaStable, s.node_name(nodes[i]) + " without its conjugate");
        p(it->second, i) = 1;
    }
    return p;
}

namespace {

std::vector<std::string> labels(const SurfacePair& s, const std::vector<NodeRef>& nodes) {
    std::vector<std::string> out;
    for (NodeRef n : nodes) out.push_back(s.node_name(n));
    return out;
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

bool all_ones(const std::vector<BigInt>& diag) {
    return std::all_of(diag.begin(), diag.end(), [](const BigInt& x) { return x == 1; });
}

std::vector<BigInt> torsion_of(const std::vector<BigInt>& diag) {
    std::vector<BigInt> out;
    for (const auto& d : diag)
        if (d > 1) out.push_back(d);
    return out;
}

Witness h2_witness(const std::string& name, const InducedMap& m) {
    return {name, m.matrix, numbered("t", m.matrix.rows()), numbered("s", m.matrix.cols())};
}

// The real locus of the boundary decides whether the H^2 test applies at all.
void fill_real_locus(const SurfacePair& s, const std::vector<NodeRef>& bnodes, TopologyReport& r,
                     const std::function<bool(std::string&)>& h2_test) {
    if (!r.boundary_is_tree) {
        r.real_locus = RealVerdict::NotR2;
        r.reason = "boundary is not a tree over C";
        return;
    }
    r.boundary_real_locus = real_locus_of_tree(s, bnodes);
    if (*r.boundary_real_locus == RealLocus::Empty) {
        r.real_locus = RealVerdict::BoundaryRealLocusEmpty;
        r.reason = "boundary has no real points";
        return;
    }
    std::string why;
    if (h2_test(why)) {
        r.real_locus = RealVerdict::R2;
    } else {
        r.real_locus = RealVerdict::NotR2;
        r.reason = why;
    }
}

}  // namespace

TopologyReport boundary_report(const SurfacePair& s) {
    std::vector<NodeRef> bnodes = s.boundary_nodes();
    std::sort(bnodes.begin(), bnodes.end());
    if (bnodes.empty()) throw Error(ErrorKind::BoundaryNotSNC, "no boundary components");
    IntMatrix g = s.gram(bnodes);
    for (std::size_t i = 0; i < bnodes.size(); ++i)
        for (std::size_t j = i + 1; j < bnodes.size(); ++j)
            if (g(i, j) > 1 || g(i, j) < 0)
                throw Error(ErrorKind::BoundaryNotSNC, s.node_name(bnodes[i]) + " and " + s.node_name(bnodes[j]) +
                                                           " meet with multiplicity " + g(i, j).str());

    TopologyReport r;
    r.boundary_is_tree = is_tree(s, bnodes);
    std::vector<IntVector> cols;
    for (NodeRef n : bnodes) cols.push_back(s.node_class(n));
    IntMatrix j = IntMatrix::from_columns(cols, s.cl_rank());
    SmithDecomposition snf = smith_normal_form(j);
    std::vector<BigInt> diag = snf.diagonal();
    std::size_t rk = snf.rank();
    r.h1_invariants = torsion_of(diag);
    r.h1_free_rank = bnodes.size() - rk;
    r.h2_free_rank = s.cl_rank() - rk;
    r.q_acyclic = r.boundary_is_tree && j.is_square() && determinant(j) != 0;
    r.z_acyclic = r.q_acyclic && all_ones(diag);

    std::vector<std::string> cl_labels = numbered("c", s.cl_rank());
    r.witnesses.push_back({"j", j, cl_labels, labels(s, bnodes)});
    r.witnesses.push_back({"j_snf", snf.D, {}, {}});

    GMap jm{GModule{node_permutation(s, bnodes)}, GModule{s.sigma()}, j};
    fill_real_locus(s, bnodes, r, [&](std::string& why) {
        InducedMap h = induced_h_even(jm);
        r.witnesses.push_back(h2_witness("H2(j)", h));
        if (!h.is_iso) why = "H2(j) is not an isomorphism";
        return h.is_iso;
    });
    return r;
}

TopologyReport arrangement_report(const SurfacePair& s, const ArrangementInput& in) {
    std::set<int> bset(in.b.begin(), in.b.end());
    for (int id : in.d) {
        if (!s.has_component(id) || !s.component(id).original)
            throw Error(ErrorKind::BNotContainingProperTransform,
                        "arrangement member " + std::to_string(id) + " is not an original curve");
        if (!bset.count(id))
            throw Error(ErrorKind::BNotContainingProperTransform,
                        s.component(id).name + " is in the arrangement but not in the boundary");
    }
    for (int id : in.b)
        if (!s.has_component(id))
            throw Error(ErrorKind::BNotContainingProperTransform, "boundary member " + std::to_string(id) + " missing");

    std::vector<NodeRef> dnodes = s.nodes_of(in.d);
    std::vector<NodeRef> bnodes = s.nodes_of(in.b);
    std::sort(bnodes.begin(), bnodes.end());
    std::vector<NodeRef> e0;
    for (NodeRef n : s.nodes())
        if (!s.component(n.id).original && !bset.count(n.id)) e0.push_back(n);

    const std::size_t rho = s.base_form().rows();
    if (e0.size() + rho != dnodes.size())
        throw Error(ErrorKind::RankMismatch, std::to_string(e0.size()) + " exceptional curves outside the boundary, " +
                                                 std::to_string(dnodes.size()) + " arrangement curves, base rank " +
                                                 std::to_string(rho));

    std::vector<IntVector> dcols;
    for (NodeRef n : dnodes) {
        const IntVector& bc = s.component(n.id).base_class;
        dcols.push_back(n.half == 0 ? bc : s.base_sigma() * bc);
    }
    IntMatrix d = IntMatrix::from_columns(dcols, rho);
    IntMatrix rel;
    if (in.relations) {
        rel = *in.relations;
        if (rel.rows() != dnodes.size() || !(d * rel).is_zero())
            throw Error(ErrorKind::RankMismatch, "supplied relations are not relations among the arrangement classes");
        if (rel.cols() + rank(d) != dnodes.size() || !all_ones(smith_normal_form(rel).diagonal()) ||
            rank(rel) != rel.cols())
            throw Error(ErrorKind::RankMismatch, "supplied relations do not form a basis of all relations");
    } else {
        rel = kernel_basis(d);
    }

    std::map<NodeRef, std::size_t> erow;
    for (std::size_t i = 0; i < e0.size(); ++i) erow[e0[i]] = i;
    IntMatrix phi(e0.size(), rel.cols());
    for (std::size_t k = 0; k < rel.cols(); ++k)
        for (std::size_t j = 0; j < dnodes.size(); ++j) {
            if (rel(j, k) == 0) continue;
            for (const auto& [n, c] : s.total_transform(dnodes[j])) {
                auto it = erow.find(n);
                if (it != erow.end()) phi(it->second, k) += rel(j, k) * c;
            }
        }

    TopologyReport r;
    r.boundary_is_tree = is_tree(s, bnodes);
    SmithDecomposition dsnf = smith_normal_form(d);
    bool d_surjective = dsnf.rank() == rho && all_ones(dsnf.diagonal());
    SmithDecomposition psnf = smith_normal_form(phi);
    std::vector<BigInt> pdiag = psnf.diagonal();
    r.h1_invariants = torsion_of(pdiag);
    r.h1_free_rank = e0.size() - psnf.rank();
    r.h2_free_rank = rel.cols() - psnf.rank();
    r.q_acyclic = phi.is_square() && determinant(phi) != 0;
    r.z_acyclic = r.q_acyclic && d_surjective && all_ones(pdiag);

    r.witnesses.push_back({"d", d, numbered("c", rho), labels(s, dnodes)});
    r.witnesses.push_back({"R", rel, labels(s, dnodes), numbered("r", rel.cols())});
    r.witnesses.push_back({"phi", phi, labels(s, e0), numbered("r", rel.cols())});
    r.witnesses.push_back({"phi_snf", psnf.D, {}, {}});

    GModule dmod{node_permutation(s, dnodes)};
    GMap dm{dmod, GModule{s.base_sigma()}, d};
    GMap pm{restrict_module(dmod, rel), GModule{node_permutation(s, e0)}, phi};
    fill_real_locus(s, bnodes, r, [&](std::string& why) {
        InducedMap hd = induced_h_even(dm);
        InducedMap hp = induced_h_even(pm);
        r.witnesses.push_back(h2_witness("H2(d)", hd));
        r.witnesses.push_back(h2_witness("H2(phi)", hp));
        if (!hd.is_surjective) why = "H2(d) is not surjective";
        else if (!hp.is_iso) why = "H2(phi) is not an isomorphism";
        return hd.is_surjective && hp.is_iso;
    });
    return r;
}

}  // namespace fakeplane
