#include "iterstbc/decodability.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace iterstbc {

std::vector<BasisMatrix> basis_matrices(const CodeSpec& spec, Subcode subcode) {
    unsigned m = spec.m(), n = spec.n();
    unsigned layers = (subcode == Subcode::DiagonalBlock) ? 1 : n;
    std::vector<BasisMatrix> out;
    unsigned index = 0;
    for (unsigned layer = 0; layer < layers; ++layer)
        for (unsigned k = 0; k < m; ++k)
            for (unsigned slot = 0; slot < n; ++slot)
                for (unsigned im = 0; im < 2; ++im) {
                    std::vector<Symbol> symbols(static_cast<size_t>(m) * n * n, Symbol{0, 0});
                    symbols[static_cast<size_t>(layer) * m * n + k * n + slot] =
                        im ? Symbol{0, 1} : Symbol{1, 0};
                    Codeword w = encode_raw(spec, symbols);
                    out.push_back(
                        BasisMatrix{index++, layer, k, slot, im != 0, std::move(w.exact_matrix)});
                }
    return out;
}

namespace {
KMatrix mgk_matrix(const KMatrix& g, const KMatrix& k) {
    KMatrix gs = g.conj_transposed();
    KMatrix ks = k.conj_transposed();
    return g * ks + k * gs;
}
}  // namespace

CycloElement mgk(const KMatrix& g, const KMatrix& k) { return mgk_matrix(g, k).frobenius_sq(); }

bool mgk_is_zero(const KMatrix& g, const KMatrix& k) { return mgk_matrix(g, k).is_zero(); }

unsigned GroupPartition::max_group_size() const {
    unsigned mx = 0;
    for (const auto& g : groups) mx = std::max<unsigned>(mx, static_cast<unsigned>(g.size()));
    return mx;
}

GroupPartition find_partition(const std::vector<BasisMatrix>& mats) {
    if (mats.empty()) throw std::invalid_argument("no basis matrices");
    size_t g = mats.size();
    std::vector<unsigned> parent(g);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<unsigned(unsigned)> find = [&](unsigned x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (size_t a = 0; a < g; ++a)
        for (size_t b = a + 1; b < g; ++b)
            if (!mgk_is_zero(mats[a].matrix, mats[b].matrix)) {
                unsigned ra = find(static_cast<unsigned>(a)), rb = find(static_cast<unsigned>(b));
                if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
    std::vector<std::vector<unsigned>> groups;
    std::vector<int> group_of(g, -1);
    for (unsigned i = 0; i < g; ++i) {
        unsigned r = find(i);
        if (group_of[r] < 0) {
            group_of[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<size_t>(group_of[r])].push_back(i);
    }
    return GroupPartition{std::move(groups)};
}

bool partition_valid(const std::vector<BasisMatrix>& mats, const GroupPartition& p) {
    std::vector<int> group_of(mats.size(), -1);
    for (size_t gi = 0; gi < p.groups.size(); ++gi)
        for (unsigned idx : p.groups[gi]) {
            if (idx >= mats.size() || group_of[idx] != -1) return false;
            group_of[idx] = static_cast<int>(gi);
        }
    for (int go : group_of)
        if (go < 0) return false;
    for (size_t a = 0; a < mats.size(); ++a)
        for (size_t b = a + 1; b < mats.size(); ++b) {
            if (group_of[a] == group_of[b]) continue;
            if (!mgk_is_zero(mats[a].matrix, mats[b].matrix)) return false;
        }
    return true;
}

Rational complexity_exponent(const CodeSpec& spec, const GroupPartition& diagonal_partition) {
    unsigned l = diagonal_partition.l();
    if (l == 0) throw std::invalid_argument("empty partition");
    unsigned m = spec.m(), n = spec.n();
    // m n^2 - m n (l-1)/l
    return Rational(static_cast<long>(m) * n * n) -
           rat(static_cast<long>(m) * n * (l - 1), l);
}

DecodabilityReport analyze_decodability(const CodeSpec& spec, Subcode subcode) {
    DecodabilityReport report;
    report.preset = spec.name;
    report.subcode = subcode;
    auto mats = basis_matrices(spec, subcode);
    report.real_symbols = static_cast<unsigned>(mats.size());
    report.partition = find_partition(mats);
    if (!partition_valid(mats, report.partition))
        throw std::logic_error("computed partition failed validation");

    // The complexity exponent always comes from the diagonal-block subcode.
    GroupPartition diag_partition = report.partition;
    if (subcode != Subcode::DiagonalBlock)
        diag_partition = find_partition(basis_matrices(spec, Subcode::DiagonalBlock));
    report.exponent = complexity_exponent(spec, diag_partition);

    report.m_nonzero.assign(mats.size(), std::vector<bool>(mats.size(), false));
    for (size_t a = 0; a < mats.size(); ++a)
        for (size_t b = 0; b < mats.size(); ++b)
            report.m_nonzero[a][b] = (a == b) ? !mats[a].matrix.is_zero()
                                              : !mgk_is_zero(mats[a].matrix, mats[b].matrix);
    return report;
}

}  // namespace iterstbc
