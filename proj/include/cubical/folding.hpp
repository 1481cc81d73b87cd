#pragma once

// Folding operators psi_i, Psi_r, Phi_m and the globular/diskal subsets.

#include <map>

#include "cubical/cells.hpp"

namespace cubical {

/// psi_i t = g_i^+ d_{i+1}^- t  o_{i+1}  t  o_{i+1}  g_i^- d_{i+1}^+ t.
/// Throws IndexOutOfRange unless 1 <= i <= dim(t) - 1.
Cell psi(int i, const Cell& t);

/// Psi_r = psi_{r-1} ... psi_1 (psi_1 applied first).
Cell psi_block(int r, const Cell& t);

/// Phi_m = Psi_1 Psi_2 ... Psi_m (Psi_m applied first).
Cell phi_fold(int m, const Cell& t);

struct FoldReport {
  Cell input;
  Cell output;
  std::map<FaceKey, Tri> per_face_globularity;
  Tri globular = Tri::Unknown;
};

/// Throws IndexOutOfRange unless 0 <= m <= dim(t).
FoldReport fold_phi(Normalizer& norm, int m, const Cell& t);
FoldReport fold_phi(const Presentation& p, int m, const Cell& t);

/// Per-face verdicts of in_image_eps(d_i^a t, i - 1).
std::map<FaceKey, Tri> globularity_by_face(Normalizer& norm, const Cell& t);

/// Yes when every verdict is Yes, No when some verdict is No.
Tri combine(const std::map<FaceKey, Tri>& verdicts);

Tri is_globular(Normalizer& norm, const Cell& t);
Tri is_globular(const Presentation& p, const Cell& t);

/// Faces other than d_1^- lie in the image of e_1^{n-1}.
Tri is_diskal(Normalizer& norm, const Cell& t);
Tri is_diskal(const Presentation& p, const Cell& t);

/// Membership of x in the image of e_{i+1} e_i, tested as
/// e_{i+1} e_i d_i^- d_i^- x = x.
Tri in_image_double_degen(Normalizer& norm, const Cell& x, int i);

/// The two connection factors g_i^+ d_{i+1}^- t and g_i^- d_{i+1}^+ t of
/// psi_i t.
std::pair<Cell, Cell> psi_connection_factors(int i, const Cell& t);

/// (d_1^a)^i t in normal form. Throws NotGlobular unless is_globular(t) is
/// Yes, IndexOutOfRange unless i <= dim(t).
Cell globular_face(Normalizer& norm, const Cell& t, int i, Sign a);
Cell globular_face(const Presentation& p, const Cell& t, int i, Sign a);

}  // namespace cubical
