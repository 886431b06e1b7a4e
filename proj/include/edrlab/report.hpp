#pragma once

// JSON serialization for the CLI-facing reports. JSON is the canonical
// machine format; pretty output is rendered from it. Nothing here depends
// on wall time or thread count, so identical inputs give identical bytes.

#include "edrlab/theorems.hpp"
#include "edrlab/zlift.hpp"

namespace edrlab {

inline Json tri_to_json(Tri t) { return Json(tri_str(t)); }

inline Json fmat_json(const FMat& M) {
  Json rows = Json::array();
  for (std::uint32_t i = 0; i < M.rows; ++i) {
    Json row = Json::array();
    for (std::uint32_t j = 0; j < M.cols; ++j) row.push_back(M.R->elem_str(M.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json class_report_json(const ClassReport& rep, bool with_timing) {
  Json j;
  j["schema"] = "edrlab.classify.v1";
  j["ring"] = rep.spec;
  j["characteristic"] = rep.characteristic;
  j["tags"] = {{"reduced", rep.reduced},
               {"local", rep.local},
               {"field", rep.field},
               {"product", rep.product}};
  Json flags = Json::object();
  for (const auto& [name, r] : rep.flags) {
    Json f;
    f["value"] = tri_str(r.val);
    if (!r.note.empty()) f["note"] = r.note;
    flags[name] = std::move(f);
  }
  j["flags"] = std::move(flags);
  if (with_timing) j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

inline std::string class_report_csv_header() {
  std::string s = "ring";
  for (auto& [f, name] : flag_names()) s += "," + name;
  return s + "\n";
}

inline std::string class_report_csv_row(const ClassReport& rep) {
  std::string s = rep.spec;
  for (const auto& [name, r] : rep.flags)
    s += std::string(",") + (r.val == Tri::True ? "T" : r.val == Tri::False ? "F" : "U");
  return s + "\n";
}

inline Json prop4_json(const FMat& A, const lift::Prop4& p) {
  Json j;
  j["schema"] = "edrlab.matrix_check.v1";
  j["ring"] = A.R->spec();
  j["matrix"] = fmat_json(A);
  j["det"] = A.R->elem_str(det2(A));
  Json flags = Json::object();
  auto put = [&](const char* name, Tri v, const std::optional<FMat>& wit) {
    Json f;
    f["value"] = tri_str(v);
    if (wit) f["witness"] = fmat_json(*wit);
    flags[name] = std::move(f);
  };
  put("simply_extendable", p.simply_extendable, p.se_witness);
  put("extendable", p.extendable, p.e_witness);
  put("det_liftable", p.det_liftable, p.dl_witness);
  put("weakly_det_liftable", p.weakly_det_liftable, p.wdl_witness);
  {
    Json f;
    f["value"] = tri_str(p.non_full_mod_det);
    if (p.nf_witness && p.nf_quotient) {
      const Ring& Q = p.nf_quotient;
      auto [l, m, o, q] = *p.nf_witness;
      f["witness"] = {{"l", Q->elem_str(l)},
                      {"m", Q->elem_str(m)},
                      {"o", Q->elem_str(o)},
                      {"q", Q->elem_str(q)},
                      {"quotient", Q->spec()}};
    }
    flags["non_full_mod_det"] = std::move(f);
  }
  j["flags"] = std::move(flags);
  return j;
}

inline Json zmat_json(const Zint* a, std::size_t rows, std::size_t cols) {
  Json out = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(a[i * cols + j].str());
    out.push_back(std::move(row));
  }
  return out;
}

inline Json zlift_json(const zlift::Mat2& A, long long height,
                       const zlift::ZSearch& se, const zlift::ZSearch& e,
                       const zlift::ZSearch& dl, const zlift::ZSearch& wdl,
                       const zlift::ZSearch& nf) {
  Json j;
  j["schema"] = "edrlab.matrix_check.v1";
  j["ring"] = "Int:H=" + std::to_string(height);
  j["matrix"] = zmat_json(A.data(), 2, 2);
  j["det"] = zlift::det2z(A).str();
  Json flags = Json::object();
  auto put3 = [&](const char* name, const zlift::ZSearch& s) {
    Json f;
    f["value"] = tri_str(s.val);
    if (s.completion) f["witness"] = zmat_json(s.completion->data(), 3, 3);
    flags[name] = std::move(f);
  };
  auto put2 = [&](const char* name, const zlift::ZSearch& s) {
    Json f;
    f["value"] = tri_str(s.val);
    if (s.lift) f["witness"] = zmat_json(s.lift->data(), 2, 2);
    flags[name] = std::move(f);
  };
  put3("simply_extendable", se);
  put3("extendable", e);
  put2("det_liftable", dl);
  put2("weakly_det_liftable", wdl);
  {
    Json f;
    f["value"] = tri_str(nf.val);
    if (nf.lmoq) {
      const auto& [l, m, o, q] = *nf.lmoq;
      f["witness"] = {{"l", l.str()}, {"m", m.str()}, {"o", o.str()}, {"q", q.str()}};
    }
    flags["non_full"] = std::move(f);
  }
  j["flags"] = std::move(flags);
  return j;
}

inline Json upsilon_json(const UnitMapImage& im) {
  Json j;
  j["schema"] = "edrlab.upsilon.v1";
  j["ring"] = im.R->spec();
  j["a"] = im.R->elem_str(im.a);
  j["b"] = im.R->elem_str(im.b);
  j["c"] = im.R->elem_str(im.c);
  j["target"] = im.q_c.ring->spec();
  Json target_units = Json::array();
  for (std::uint32_t u : im.q_c.ring->units().elems)
    target_units.push_back(im.q_c.ring->elem_str(u));
  j["target_units"] = std::move(target_units);
  Json image = Json::array();
  for (std::uint32_t u : im.image) image.push_back(im.q_c.ring->elem_str(u));
  j["image"] = std::move(image);
  j["surjective"] = im.surjective;
  return j;
}

template <class D>
Json snf_json(const D& dom, const SnfCertificate<D>& cert) {
  auto mat = [&](const DMat<D>& M) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < M.rows; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < M.cols; ++j) row.push_back(dom.str(M.at(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  Json j;
  j["schema"] = "edrlab.snf.v1";
  j["input"] = mat(cert.input);
  j["M"] = mat(cert.M);
  j["N"] = mat(cert.N);
  j["D"] = mat(cert.D_);
  Json diag = Json::array();
  for (const auto& d : cert.diag) diag.push_back(dom.str(d));
  j["diag"] = std::move(diag);
  j["det_M"] = dom.str(dmat_det(dom, cert.M));
  j["det_N"] = dom.str(dmat_det(dom, cert.N));
  j["verified"] = verify_snf(dom, cert);
  return j;
}

inline Json cr3_json(long long a, long long b, long long s, long long H,
                     const Cr3Witness& w) {
  Json j;
  j["schema"] = "edrlab.cr3.v1";
  j["a"] = a;
  j["b"] = b;
  j["s"] = s;
  j["bound"] = H;
  j["found"] = tri_str(w.found);
  if (w.found == Tri::True) {
    j["e"] = w.e.str();
    j["f"] = w.f.str();
    j["route"] = w.route;
    j["max_norm"] = w.max_norm;
  }
  return j;
}

inline Json eq4_json(long long a, long long u, long long t, long long H,
                     const Eq4Witness& w) {
  Json j;
  j["schema"] = "edrlab.eq4.v1";
  j["a"] = a;
  j["u"] = u;
  j["t"] = t;
  j["bound"] = H;
  j["found"] = tri_str(w.found);
  if (w.found == Tri::True) {
    j["s"] = w.s.str();
    j["l"] = w.l.str();
    j["z"] = w.z.str();
    j["max_norm"] = w.max_norm;
  }
  return j;
}

// Pretty renderings are derived from the JSON, not computed separately.
inline std::string pretty(const Json& j, int indent = 0) {
  std::ostringstream os;
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n" << pretty(it.value(), indent + 1);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j) scalars = scalars && !v.is_object() && !v.is_array();
    if (scalars) {
      os << pad << j.dump() << "\n";
    } else {
      for (const auto& v : j) os << pretty(v, indent);
    }
  } else {
    os << pad << j.dump() << "\n";
  }
  return os.str();
}

}  // namespace edrlab
