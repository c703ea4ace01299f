#pragma once

#include <array>
#include <string>
#include <vector>

#include "berger/form.hpp"
#include "berger/linalg.hpp"
#include "berger/scalar.hpp"
#include "berger/so5.hpp"

namespace berger::flag {

using liealg::Form;
using linalg::Mat;
using linalg::Vec;
using scalar::Complex;
using scalar::FieldScalar;

using CF = Complex<FieldScalar>;
using CForm = Form<CF>;

// complex coframe index order: 0..3 the (1,0)-forms, 4..7 their conjugates,
// 8,9 the torus connection forms
inline constexpr int kZeta(int i) { return i - 1; }       // i in 1..4
inline constexpr int kZetaBar(int i) { return 3 + i; }    // i in 1..4
inline constexpr int kRho(int i) { return 7 + i; }        // i in 1..2

// the (i,j) entry of the adapted so(5) matrix as a 1-form in the coframe
CForm entry_form(int i, int j);

// the distinguished complex 1-forms
const std::array<CForm, 4>& zeta_forms();
CForm rho1_form();
CForm rho2_form();
CForm conjugate_form(const CForm& f);

// expansion of a complexified coframe form in the complex frame monomials
CForm to_complex_frame(const CForm& f);

// expansion back: from complex frame coordinates is not needed; the ideal
// test inspects frame-basis monomials directly
bool in_holomorphic_ideal(const CForm& f);  // every monomial has a zeta factor

// max embedded coefficient magnitude
double cform_norm(const CForm& f);

struct JStructCheck {
  bool congruences_hold = false;       // the three quadratic congruences and d(zeta4)
  bool negative_control_fails = false; // d(zeta1) alone escapes the ideal
  CForm negative_control_residual;     // the escaping part, in frame coordinates
  bool pass = false;
};
JStructCheck verify_jstruct();

struct OmegaZetaCheck {
  double max_residual = 0;
  bool full_rank = true;  // the 4x4 relation matrix is invertible
  bool pass = false;
};
OmegaZetaCheck verify_omegazeta();

struct StructFlagCheck {
  std::array<double, 6> residuals{};  // dz1..dz4, drho1, drho2
  bool d_squared_zero = false;
  bool pass = false;
};
StructFlagCheck verify_structflag();

struct NkCheck {
  // d(Omega) = a Re(Psi) + b Im(Psi) after reducing along the unitary ideal
  double re_coefficient = 0;
  double im_coefficient = 0;
  double proportionality_residual = 0;
  double dropped_component_norm = 0;  // non-semibasic part of d(Omega), recorded
  // d(Psi) = c Omega^2 with Psi holomorphic of top degree
  double volume_coefficient = 0;
  double volume_residual = 0;
  double im_psi_derivative_norm = 0;
  double omega_wedge_psi_norm = 0;
  bool pass = false;
};
NkCheck verify_nk_cp3();

// pointwise criterion for the ruled construction to immerse
bool immersion_criterion(const std::array<Complex<double>, 4>& w, double tol = 1e-9);
double immersion_normalization_defect(const std::array<Complex<double>, 4>& w);

struct Z5Check {
  bool span_matches = false;       // vanishing locus matches the four listed entries
  double pattern_residual = 0;     // surviving entries against the displayed pattern
  bool norm_identity = false;      // zero first/fourth coordinates force |W2|^2+|W3|^2=1
  double ruling_frame_residual = 0;  // zeta_1, zeta_4 on the 145-orbit frame directions
  bool pass = false;
};
Z5Check z5_normal_lift_check();

}  // namespace berger::flag
