#include <sstream>

#include "k3cli/cli.hpp"

namespace k3::cli {

json int_json(const Int& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

json form_json(const bqf::Form& f) { return json::array({int_json(f.a), int_json(f.b), int_json(f.c)}); }

json field_element_json(const FieldElement& x) {
  if (x.v == 0) return to_string(x.u);
  return json::array({to_string(x.u), to_string(x.v)});
}

json poly_json(const Poly& p) {
  json out = json::array();
  for (int i = 0; i <= p.degree(); ++i) out.push_back(field_element_json(p.coeff(i)));
  return out;
}

json model_json(const ellsurf::WeierstrassModel& w) {
  json a = json::array();
  for (const auto& c : w.coeffs()) a.push_back(poly_json(c));
  return json{{"field", json{{"m", w.field()}}}, {"a", a}, {"equation", w.str()}};
}

namespace {

FieldElement element_from_json(const json& j, long m) {
  if (j.is_string()) return FieldElement(rat_from_string(j.get<std::string>()));
  if (j.is_number_integer()) return FieldElement(Int(j.get<long>()));
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
    return FieldElement(rat_from_string(j[0].get<std::string>()), rat_from_string(j[1].get<std::string>()), m);
  throw UsageError("bad coefficient in model JSON: " + j.dump());
}

}  // namespace

ellsurf::WeierstrassModel model_from_json(const json& j) {
  if (!j.contains("a") || !j["a"].is_array() || j["a"].size() != 5)
    throw UsageError("model JSON needs an array 'a' of five coefficient lists");
  long m = 1;
  if (j.contains("field")) m = j["field"].at("m").get<long>();
  check_field(m);
  std::vector<Poly> a;
  for (const auto& coeffs : j["a"]) {
    std::vector<FieldElement> c;
    for (const auto& e : coeffs) c.push_back(element_from_json(e, m));
    a.emplace_back(c, m);
  }
  return ellsurf::WeierstrassModel(m, a[0], a[1], a[2], a[3], a[4]);
}

json survey_json(const ellsurf::Survey& s) {
  json fibers = json::array();
  for (const auto& e : s.fibers) {
    json f{{"place", e.place.str()},
           {"type", e.fiber.symbol()},
           {"euler", e.fiber.euler()},
           {"components", e.fiber.components()},
           {"group_order", e.fiber.group_order()}};
    if (e.fiber.split) f["split"] = *e.fiber.split;
    fibers.push_back(f);
  }
  return json{{"configuration", s.configuration()},
              {"fibers", fibers},
              {"residual_i1", s.residual_i1},
              {"residual", s.residual.str()},
              {"euler_sum", s.euler_sum},
              {"chi", s.chi}};
}

json section_json(const ellsurf::SectionAnalysis& a) {
  json comps = json::array();
  for (const auto& c : a.components) {
    json e{{"place", c.place.str()}, {"fiber", c.fiber.symbol()}, {"contribution", to_string(c.contribution)}};
    if (c.labelled)
      e["component"] = c.component;
    else
      e["component"] = nullptr;
    comps.push_back(e);
  }
  return json{{"zero_section", a.zero_section},
              {"po", to_string(a.po)},
              {"chi", a.chi},
              {"height", to_string(a.height)},
              {"components", comps}};
}

json inose_json(const enriques::InoseData& d) {
  json j{{"mw_rank", d.mw_rank},
         {"extra_fibers", d.extra_fibers},
         {"e_isomorphic_eprime", d.e_isomorphic_eprime},
         {"exact", d.exact},
         {"bits", d.bits},
         {"paper_anchor", "Inose pencil, table of singular fibres and MW-rank"}};
  if (d.exact) {
    j["A_cubed"] = to_string(d.A_cubed);
    j["B_squared"] = to_string(d.B_squared);
  } else {
    j["A_cubed"] = json{{"re", num::to_string(d.A_cubed_approx.re, 40)}, {"im", num::to_string(d.A_cubed_approx.im, 40)}};
    j["B_squared"] = json{{"re", num::to_string(d.B_squared_approx.re, 40)},
                          {"im", num::to_string(d.B_squared_approx.im, 40)}};
  }
  if (d.model) j["model"] = model_json(*d.model);
  return j;
}

json fields_json(const enriques::FieldReport& f) {
  return json{{"d", int_json(f.d)},
              {"class_number", int_json(f.class_number)},
              {"deg_HK", int_json(f.deg_HK)},
              {"deg_H4d_over_Hd", f.deg_H4d_over_Hd},
              {"genus_size", int_json(f.genus_size)},
              {"kummer_disc", int_json(f.kummer_disc)},
              {"min_field_bound", f.min_field_bound},
              {"primitive", f.primitive},
              {"paper_anchor", "degree of H(4d)/H(d) by the splitting of 2"}};
}

json sandwich_json(const enriques::KummerSandwich& k) {
  json j{{"kummer_form", form_json(k.kummer_form)}, {"kummer_disc", int_json(k.kummer_disc)}, {"is_kummer", k.is_kummer}};
  j["half_form"] = k.half_form ? form_json(*k.half_form) : json(nullptr);
  return j;
}

json report_json(const enriques::K3EnriquesReport& r) {
  json j{{"form", form_json(r.form)},
         {"d", int_json(r.d)},
         {"is_kummer", r.is_kummer},
         {"enriques_admissible",
          json{{"value", r.enriques_admissible.value},
               {"reason", r.enriques_admissible.reason},
               {"paper_anchor", r.enriques_admissible.paper_anchor}}},
         {"base_change_involution",
          json{{"verdict", r.base_change_involution.verdict},
               {"mechanism", r.base_change_involution.mechanism},
               {"paper_anchor", r.base_change_involution.paper_anchor}}},
         {"exception_flag", r.exception_flag},
         {"fields", fields_json(r.fields)},
         {"sandwich", sandwich_json(r.sandwich)},
         {"ns_over", json{{"value", r.ns_over}, {"conjectural", false}}},
         {"enriques_ns_over", json{{"value", r.enriques_ns_over}, {"conjectural", r.enriques_ns_conjectural}}},
         {"notes", r.notes}};
  if (r.cm) {
    j["cm"] = json{{"tau", r.cm->tau.str()},
                   {"tau_prime", r.cm->tau_prime.str()},
                   {"e_isomorphic_eprime", r.cm->e_isomorphic_eprime}};
  } else {
    j["cm"] = nullptr;
  }
  j["inose"] = r.inose ? inose_json(*r.inose) : json(nullptr);
  return j;
}

namespace {

void flatten(const json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array() && !j.empty() && j[0].is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream os;
  flatten(j, "", os);
  return os.str();
}

}  // namespace k3::cli
