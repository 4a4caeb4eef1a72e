#include "wilfkit/verify.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "wilfkit/enumerate.hpp"

namespace wilfkit {

namespace {

struct Prop {
  std::string name;
  uint64_t checked = 0;
  bool pass = true;
  std::string fail_detail;

  void expect(bool ok, const std::function<std::string()>& detail) {
    ++checked;
    if (!ok && pass) {
      pass = false;
      fail_detail = detail();
    }
  }

  VerifyResult result() const {
    return {name, pass, pass ? "checked " + std::to_string(checked) + " instances" : fail_detail};
  }
};

std::string describe(const Shape& s, const SignedMatrix& a, const SignedMatrix& b) {
  return "shape " + format_shape(s) + ", patterns (" + format_pattern(from_matrix(a)) + ") / (" +
         format_pattern(from_matrix(b)) + ")";
}

bool same_positions(const SparseFilling& a, const SparseFilling& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (size_t i = 0; i < a.cells.size(); ++i)
    if (a.cells[i].row != b.cells[i].row || a.cells[i].col != b.cells[i].col) return false;
  return true;
}

std::vector<Shape> oriented_shapes(int max_cells, Orientation o) {
  auto shapes = all_young_shapes(max_cells);
  if (o == Orientation::ne)
    for (auto& s : shapes) s.orient = Orientation::ne;
  return shapes;
}

}  // namespace

bool all_pass(const std::vector<VerifyResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string render_results(const std::vector<VerifyResult>& results) {
  std::ostringstream os;
  for (const auto& r : results)
    os << (r.pass ? "PASS" : "FAIL") << ' ' << r.check << ": " << r.detail << '\n';
  return os.str();
}

std::vector<VerifyResult> verify_barring(int max_cells) {
  const std::vector<SignedMatrix> pats = {alpha(1), negate_block(alpha(1)), alpha(2), beta(2)};
  const SignedMatrix nonsym = to_matrix(parse_pattern("2 -1"));

  Prop counts{"barring/avoider-counts-equal"};
  Prop avoids{"barring/image-avoids-omega"};
  Prop positions{"barring/positions-preserved"};
  Prop recolour{"barring/recolouring-stable"};
  Prop round{"barring/round-trip"};
  Prop sym{"barring/symmetric-variant"};

  for (const auto& shape : oriented_shapes(max_cells, Orientation::young)) {
    std::vector<SparseFilling> fillings;
    enumerate_fillings(shape, FillMode::sparse, true,
                       [&](const SparseFilling& f) { fillings.push_back(f); });
    for (const auto& chi1 : pats)
      for (const auto& chi2 : pats) {
        const SignedMatrix theta = direct_sum({chi1, chi2}, Layout::diagonal);
        const SignedMatrix omega = direct_sum({chi1, negate_block(chi2)}, Layout::diagonal);
        uint64_t n_theta = 0, n_omega = 0;
        for (const auto& f : fillings) {
          bool av_t = !filling_contains(f, theta);
          bool av_o = !filling_contains(f, omega);
          if (av_o) ++n_omega;
          if (!av_t) continue;
          ++n_theta;
          SparseFilling g = barring_map(f, chi1, chi2);
          auto where = [&] { return describe(shape, chi1, chi2); };
          avoids.expect(!filling_contains(g, omega), where);
          positions.expect(same_positions(f, g), where);
          recolour.expect(barring_coloured_cells(g, chi1) == barring_coloured_cells(f, chi1),
                          where);
          round.expect(barring_map(g, chi1, negate_block(chi2)) == f, where);
        }
        counts.expect(n_theta == n_omega, [&] {
          return describe(shape, chi1, chi2) + ": " + std::to_string(n_theta) + " vs " +
                 std::to_string(n_omega);
        });
      }

    if (!is_self_conjugate(shape)) continue;
    std::vector<std::pair<SignedMatrix, SignedMatrix>> sym_pairs;
    for (const auto& chi2 : pats) {
      sym_pairs.emplace_back(nonsym, chi2);
      sym_pairs.emplace_back(alpha(2), chi2);
    }
    for (const auto& [chi1, chi2] : sym_pairs) {
      const SignedMatrix theta = direct_sum({chi1, chi2}, Layout::diagonal);
      const SignedMatrix omega = direct_sum({chi1, negate_block(chi2)}, Layout::diagonal);
      uint64_t n_theta = 0, n_omega = 0;
      std::set<SparseFilling> images;
      for (const auto& f : fillings) {
        if (!f.is_symmetric()) continue;
        if (!filling_contains(f, omega)) ++n_omega;
        if (filling_contains(f, theta)) continue;
        ++n_theta;
        SparseFilling g = barring_map_symmetric(f, chi1, chi2);
        auto where = [&] { return describe(shape, chi1, chi2); };
        sym.expect(g.is_symmetric() && !filling_contains(g, omega) && images.insert(g).second,
                   where);
      }
      sym.expect(n_theta == n_omega, [&] {
        return describe(shape, chi1, chi2) + ": symmetric counts " + std::to_string(n_theta) +
               " vs " + std::to_string(n_omega);
      });
    }
  }
  return {counts.result(), avoids.result(),   positions.result(),
          recolour.result(), round.result(), sym.result()};
}

std::vector<VerifyResult> verify_prop1(int max_cells) {
  PhiOracle oracle;
  const SignedMatrix chi1 = alpha(2), chi2 = beta(2);
  const std::vector<SignedMatrix> lowers = {alpha(1), negate_block(alpha(1))};

  Prop counts{"prop1/avoider-counts-equal"};
  Prop avoids{"prop1/image-avoids-omega"};
  Prop lines{"prop1/row-column-counts-preserved"};
  Prop corner{"prop1/corner-values-preserved"};
  Prop inject{"prop1/injective"};
  Prop round{"prop1/round-trip"};

  for (Orientation o : {Orientation::young, Orientation::ne}) {
    const Layout layout = o == Orientation::young ? Layout::diagonal : Layout::antidiagonal;
    for (const auto& shape : oriented_shapes(max_cells, o)) {
      std::vector<SparseFilling> fillings;
      enumerate_fillings(shape, FillMode::sparse, true,
                         [&](const SparseFilling& f) { fillings.push_back(f); });
      for (const auto& chi : lowers) {
        const SignedMatrix theta = direct_sum({chi1, chi}, layout);
        const SignedMatrix omega = direct_sum({chi2, chi}, layout);
        uint64_t n_theta = 0, n_omega = 0;
        std::set<SparseFilling> images;
        for (const auto& f : fillings) {
          if (!filling_contains(f, omega)) ++n_omega;
          if (filling_contains(f, theta)) continue;
          ++n_theta;
          SparseFilling g = prop1_map(f, chi1, chi2, chi, oracle);
          auto where = [&] { return describe(shape, theta, omega); };
          avoids.expect(!filling_contains(g, omega), where);
          bool ok_lines = true;
          for (int r = 1; r <= shape.num_rows() && ok_lines; ++r) {
            int a = 0, b = 0;
            for (const auto& e : f.cells)
              if (e.row == r) ++a;
            for (const auto& e : g.cells)
              if (e.row == r) ++b;
            ok_lines = a == b;
          }
          for (int c = 1; c <= shape.width() && ok_lines; ++c) {
            int a = 0, b = 0;
            for (const auto& e : f.cells)
              if (e.col == c) ++a;
            for (const auto& e : g.cells)
              if (e.col == c) ++b;
            ok_lines = a == b;
          }
          lines.expect(ok_lines, where);
          bool ok_corner = true;
          for (const auto& cn : corners(shape))
            if (f.entry(cn.row, cn.col) != g.entry(cn.row, cn.col)) ok_corner = false;
          corner.expect(ok_corner, where);
          inject.expect(images.insert(g).second, where);
          round.expect(prop1_map(g, chi2, chi1, chi, oracle) == f, where);
        }
        counts.expect(n_theta == n_omega, [&] {
          return describe(shape, theta, omega) + ": " + std::to_string(n_theta) + " vs " +
                 std::to_string(n_omega);
        });
      }
    }
  }
  return {counts.result(), avoids.result(), lines.result(),
          corner.result(), inject.result(), round.result()};
}

std::vector<VerifyResult> verify_shape_wilf_pair(const SignedMatrix& a, const SignedMatrix& b,
                                                 int max_cells) {
  PhiOracle oracle;
  const std::string tag =
      " (" + format_pattern(from_matrix(a)) + " / " + format_pattern(from_matrix(b)) + ")";
  Prop signed_eq{"shape-wilf/signed-transversal-counts" + tag};
  Prop unsigned_eq{"shape-wilf/unsigned-transversal-counts" + tag};
  bool both_unsigned = true;
  for (int8_t e : a.a) both_unsigned = both_unsigned && e >= 0;
  for (int8_t e : b.a) both_unsigned = both_unsigned && e >= 0;

  for (const auto& shape : oriented_shapes(max_cells, Orientation::young)) {
    auto where = [&] { return describe(shape, a, b); };
    try {
      auto [na, nb] = oracle.check(shape, a, b);
      signed_eq.expect(na == nb, where);
    } catch (const ShapeWilfFailure& e) {
      signed_eq.expect(false, [&] { return std::string(e.what()); });
    }
    if (!both_unsigned) continue;
    uint64_t ua = count_avoiding_fillings(shape, a, FillMode::transversal, false);
    uint64_t ub = count_avoiding_fillings(shape, b, FillMode::transversal, false);
    unsigned_eq.expect(ua == ub, [&] {
      return describe(shape, a, b) + ": " + std::to_string(ua) + " vs " + std::to_string(ub);
    });
  }
  return {signed_eq.result(), unsigned_eq.result()};
}

std::vector<VerifyResult> verify_shape_wilf(int max_cells) {
  std::vector<VerifyResult> out;
  for (int k : {2, 3}) {
    auto part = verify_shape_wilf_pair(alpha(k), beta(k), max_cells);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

std::vector<VerifyResult> verify_involution_map(
    int max_n, const std::string& prefix,
    const std::function<SignedMatrix(const SignedMatrix&)>& lift,
    const std::function<SignedPerm(const SignedPerm&, const SignedMatrix&, const SignedMatrix&,
                                   const PhiOracle&)>& map,
    const std::vector<std::pair<SignedMatrix, SignedMatrix>>& pairs) {
  PhiOracle oracle;
  Prop valid{prefix + "/image-is-avoiding-involution"};
  Prop fixed{prefix + "/fixed-points-pointwise"};
  Prop round{prefix + "/round-trip"};
  Prop counts{prefix + "/refined-counts-equal"};

  for (const auto& [sigma, tau] : pairs) {
    const SignedPerm sig_l = from_matrix(lift(sigma));
    const SignedPerm tau_l = from_matrix(lift(tau));
    for (int n = 1; n <= max_n; ++n) {
      GroundSet set{SetKind::SI, n};
      std::set<SignedPerm> images;
      uint64_t mapped = 0;
      generate(set, [&](const SignedPerm& p) {
        if (contains(p, sig_l)) return;
        ++mapped;
        SignedPerm rho = map(p, sigma, tau, oracle);
        auto where = [&] {
          return "n=" + std::to_string(n) + ", input " + format_pattern(p) + " -> " +
                 format_pattern(rho);
        };
        valid.expect(is_involution(rho) && !contains(rho, tau_l) && images.insert(rho).second,
                     where);
        bool fp_ok = rho.size() == p.size();
        for (int i = 1; i <= n && fp_ok; ++i) {
          bool pf = std::abs(p.at(i)) == i, rf = std::abs(rho.at(i)) == i;
          fp_ok = (pf == rf) && (!pf || p.at(i) == rho.at(i));
        }
        fixed.expect(fp_ok, where);
        round.expect(map(rho, tau, sigma, oracle) == p, where);
      });
      counts.expect(mapped == images.size() &&
                        count_avoiders_refined(set, {sig_l}) ==
                            count_avoiders_refined(set, {tau_l}),
                    [&] {
                      return "n=" + std::to_string(n) + ", patterns " + format_pattern(sig_l) +
                             " / " + format_pattern(tau_l);
                    });
    }
  }
  return {valid.result(), fixed.result(), round.result(), counts.result()};
}

}  // namespace

std::vector<VerifyResult> verify_thm1(int max_n) {
  return verify_involution_map(max_n, "thm1", sigma_prime, thm1_map,
                               {{alpha(2), beta(2)}, {alpha(3), beta(3)}});
}

std::vector<VerifyResult> verify_thm1_pair(const SignedMatrix& sigma, const SignedMatrix& tau,
                                           int max_n) {
  return verify_involution_map(max_n, "thm1", sigma_prime, thm1_map, {{sigma, tau}});
}

std::vector<VerifyResult> verify_thm2(int max_n) {
  return verify_involution_map(max_n, "thm2", sigma_dprime, thm2_map,
                               {{alpha(2), beta(2)}, {alpha(3), beta(3)}});
}

std::vector<VerifyResult> verify_thm2_pair(const SignedMatrix& sigma, const SignedMatrix& tau,
                                           int max_n) {
  return verify_involution_map(max_n, "thm2", sigma_dprime, thm2_map, {{sigma, tau}});
}

}  // namespace wilfkit
