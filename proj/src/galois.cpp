#include "fakeplane/galois.hpp"

#include "fakeplane/error.hpp"

#include <stdexcept>

namespace fakeplane {

GModule GModule::trivial(std::size_t n) { return GModule{IntMatrix::identity(n)}; }

void GModule::validate() const {
    if (!sigma.is_square()) throw std::invalid_argument("GModule: sigma is not square");
    if (!(sigma * sigma == IntMatrix::identity(sigma.rows())))
        throw std::invalid_argument("GModule: sigma is not an involution");
}

GModule direct_sum(const GModule& a, const GModule& b) {
    const std::size_t n = a.rank(), m = b.rank();
    IntMatrix s(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = a.sigma(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s(n + i, n + j) = b.sigma(i, j);
    return GModule{s};
}

GModule restrict_module(const GModule& m, const IntMatrix& k) {
    auto s = solve_exact(k, m.sigma * k);
    if (!s) throw std::invalid_argument("restrict_module: sublattice is not sigma-stable");
    return GModule{*s};
}

bool GMap::is_equivariant() const { return matrix * source.sigma == target.sigma * matrix; }

namespace {

// Ker(a) / Im(b), where b maps into Ker(a) and the quotient is 2-torsion.
CohomologyGroup two_torsion_quotient(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.cols();
    CohomologyGroup out;
    IntMatrix k = kernel_basis(a);
    if (k.cols() == 0) {
        out.projection = IntMatrix(0, n);
        return out;
    }
    auto x = solve_exact(k, b);
    if (!x) throw std::logic_error("cohomology: image does not lie in the cocycle lattice");
    SmithDecomposition s = smith_normal_form(*x);
    IntMatrix lk = left_inverse(k);
    IntMatrix uinv = unimodular_inverse(s.U);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < k.cols(); ++i) {
        BigInt d = i < std::min(s.D.rows(), s.D.cols()) ? s.D(i, i) : BigInt(0);
        if (d == 1) continue;
        if (d != 2) throw std::logic_error("cohomology: quotient is not 2-torsion");
        rows.push_back(i);
        out.representatives.push_back(k * uinv.column(i));
    }
    out.dim = rows.size();
    out.projection = s.U.select_rows(rows) * lk;
    return out;
}

}  // namespace

CohomologyGroup h_even_group(const GModule& m) {
    m.validate();
    IntMatrix id = IntMatrix::identity(m.rank());
    return two_torsion_quotient(id - m.sigma, id + m.sigma);
}

CohomologyGroup h_odd_group(const GModule& m) {
    m.validate();
    IntMatrix id = IntMatrix::identity(m.rank());
    return two_torsion_quotient(id + m.sigma, id - m.sigma);
}

HEven h_even(const GModule& m) {
    CohomologyGroup g = h_even_group(m);
    return HEven{g.dim, g.representatives};
}

std::size_t h_odd(const GModule& m) { return h_odd_group(m).dim; }

InducedMap induced_h_even(const GMap& f) {
    if (f.matrix.rows() != f.target.rank() || f.matrix.cols() != f.source.rank())
        throw std::invalid_argument("induced_h_even: matrix shape does not match modules");
    if (!f.is_equivariant()) throw Error(ErrorKind::NonEquivariant, "map does not commute with the involutions");
    CohomologyGroup src = h_even_group(f.source);
    CohomologyGroup tgt = h_even_group(f.target);
    IntMatrix mat(tgt.dim, src.dim);
    for (std::size_t j = 0; j < src.dim; ++j) {
        IntVector image = f.matrix * src.representatives[j];
        IntVector coords = tgt.projection * image;
        for (std::size_t i = 0; i < tgt.dim; ++i) {
            BigInt c = coords[i] % 2;
            mat(i, j) = c < 0 ? BigInt(-c) : c;
        }
    }
    InducedMap out;
    std::size_t r = rank_mod2(mat);
    out.matrix = mat;
    out.is_surjective = r == tgt.dim;
    out.is_iso = out.is_surjective && src.dim == tgt.dim;
    return out;
}

}  // namespace fakeplane
