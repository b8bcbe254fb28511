#include "gpmood/reconstruct.hpp"

#include <stdexcept>

#include "gpmood/kernels.hpp"

namespace gpmood {

std::vector<double> gather_stencil(const Field& f, int comp, const Mesh& m, int i,
                                   int j, const StencilGeometry& st) {
    std::vector<double> q(st.n);
    for (int k = 0; k < st.n; ++k) {
        int ii = i + st.offsets[k].di;
        int jj = j + st.offsets[k].dj;
        if (ii < 0 || ii >= m.nxt || jj < 0 || jj >= m.nyt)
            throw std::out_of_range("gather_stencil: stencil leaves the ghost region");
        q[k] = f.comp[comp][m.id(ii, jj)];
    }
    return q;
}

FaceStates reconstruct_faces(const PredictionVectorSet& set, const Field& f,
                             const Mesh& m, int i, int j) {
    const StencilGeometry& st = set.stencil;
    std::vector<int32_t> off(st.n);
    for (int k = 0; k < st.n; ++k)
        off[k] = st.offsets[k].dj * m.nxt + st.offsets[k].di;
    FaceStates out;
    out.q = set.q;
    int nfaces = m.ndim == 2 ? 4 : 2;
    int idx = m.id(i, j);
    for (int face = 0; face < nfaces; ++face) {
        out.states[face].resize(set.q);
        for (int qm = 0; qm < set.q; ++qm) {
            const double* w = set.weights[face][qm].data();
            double s[4];
            for (int c = 0; c < 4; ++c)
                s[c] = kernels::recon_cell(f.data(c), idx, w, off.data(), st.plan, st.n);
            out.states[face][qm] = {s[0], s[1], s[2], s[3]};
        }
    }
    return out;
}

}  // namespace gpmood
