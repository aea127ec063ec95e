#include "asym/rabi_profile.hpp"

#include <algorithm>
#include <cmath>

#include "asym/errors.hpp"

namespace asym {

cplx RabiProfile::operator()(double x) const {
  cplx sum{};
  for (const auto& t : terms) {
    const double u = (x - t.center) / t.width;
    sum += t.weight * std::exp(-u * u);
  }
  return sum;
}

CouplingFn RabiProfile::coupling() const {
  return [p = *this](double x) { return p(x); };
}

double RabiProfile::max_width() const {
  double w = 0.0;
  for (const auto& t : terms) w = std::max(w, t.width);
  return w;
}

std::string_view to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::VIII: return "VIII";
    case PresetKind::VI: return "VI";
    case PresetKind::I: return "I";
  }
  return "?";
}

RabiProfile make_preset(PresetKind kind, double amp1, double amp2, double x0, double width,
                        double tau_delta, double tau_gamma) {
  if (!(width > 0.0)) throw InvalidInput("Gaussian width must be positive");
  RabiProfile p;
  p.tau_delta = tau_delta;
  p.tau_gamma = tau_gamma;
  switch (kind) {
    case PresetKind::VIII:
      p.terms = {{cplx(amp1, 0.0), -x0, width}, {cplx(0.0, amp1), x0, width}};
      break;
    case PresetKind::VI:
      p.terms = {{cplx(amp1, 0.0), -x0, width}, {cplx(amp2, 0.0), x0, width}};
      break;
    case PresetKind::I:
      p.terms = {{cplx(0.0, -amp1), -x0, width}, {cplx(amp2, 0.0), x0, width}};
      break;
  }
  return p;
}

ReferenceDevice transmission_absorption_device() {
  return {make_preset(PresetKind::VIII, 2618.19, 0.0, 0.1532, kDefaultWidth, 1413.01), 400.0};
}

ReferenceDevice reflection_absorption_device() {
  return {make_preset(PresetKind::VI, -244516.1, 167853.9, 0.1679, kDefaultWidth, 193.508),
          400.0};
}

ReferenceDevice half_transmission_reflection_device() {
  return {make_preset(PresetKind::I, 102.6520, 165.8355, 0.1648, kDefaultWidth, 90.5337), 8.0};
}

}  // namespace asym
