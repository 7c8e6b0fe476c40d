#include "bzdos/wannier.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace bzdos::wannier {

namespace {

bool next_line(std::istream& in, std::string& line, long& lineno) {
  if (!std::getline(in, line)) return false;
  ++lineno;
  return true;
}

long parse_int(const std::string& tok, long lineno) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (...) {
    throw ParseError("malformed integer '" + tok + "'", lineno);
  }
  if (pos != tok.size()) throw ParseError("malformed integer '" + tok + "'", lineno);
  return v;
}

double parse_real(std::string tok, long lineno) {
  // Fortran-style D exponents map to E.
  for (char& c : tok)
    if (c == 'D' || c == 'd') c = 'E';
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (...) {
    throw ParseError("malformed real '" + tok + "'", lineno);
  }
  if (pos != tok.size()) throw ParseError("malformed real '" + tok + "'", lineno);
  return v;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

long scalar_line(std::istream& in, long& lineno, const char* what) {
  std::string line;
  if (!next_line(in, line, lineno)) throw ParseError(std::string("missing ") + what, lineno + 1);
  const auto toks = tokens_of(line);
  if (toks.size() != 1) throw ParseError(std::string("expected a single integer for ") + what,
                                         lineno);
  return parse_int(toks[0], lineno);
}

}  // namespace

HrFile parse_hr(std::istream& in) {
  HrFile hr;
  long lineno = 0;
  std::string line;
  if (!next_line(in, line, lineno)) {
    hr.header_comment.clear();
    lineno = 1;  // missing comment counts as an empty one
  } else {
    hr.header_comment = line;
  }

  const long num_wann = scalar_line(in, lineno, "num_wann");
  const long nrpts = scalar_line(in, lineno, "nrpts");
  if (num_wann < 1) throw ParseError("num_wann must be positive", lineno - 1);
  if (nrpts < 1) throw ParseError("nrpts must be positive", lineno);
  hr.num_wann = static_cast<int>(num_wann);
  hr.nrpts = static_cast<int>(nrpts);

  // Degeneracies, 15 per line (the last line may be short). A line with more
  // entries than remain is a count mismatch.
  while (static_cast<long>(hr.degeneracies.size()) < nrpts) {
    if (!next_line(in, line, lineno))
      throw ParseError("unexpected end of file in degeneracy list", lineno + 1);
    const auto toks = tokens_of(line);
    if (toks.empty()) throw ParseError("empty degeneracy line", lineno);
    if (static_cast<long>(hr.degeneracies.size() + toks.size()) > nrpts)
      throw CountMismatch("degeneracy count exceeds nrpts");
    if (toks.size() > 15) throw ParseError("more than 15 degeneracies on one line", lineno);
    for (const auto& t : toks) {
      const long v = parse_int(t, lineno);
      if (v < 1) throw ParseError("degeneracy must be positive", lineno);
      hr.degeneracies.push_back(static_cast<int>(v));
    }
  }

  const long expected = nrpts * num_wann * num_wann;
  std::map<std::array<long, 5>, long> seen;
  hr.entries.reserve(expected);
  while (next_line(in, line, lineno)) {
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks.size() != 7)
      throw ParseError("expected 5 integers and 2 reals per record", lineno);
    HrEntry e;
    for (int j = 0; j < 3; ++j) e.r[j] = static_cast<int>(parse_int(toks[j], lineno));
    e.m = static_cast<int>(parse_int(toks[3], lineno));
    e.n = static_cast<int>(parse_int(toks[4], lineno));
    if (e.m < 1 || e.m > num_wann || e.n < 1 || e.n > num_wann)
      throw ParseError("orbital index out of range", lineno);
    e.re = parse_real(toks[5], lineno);
    e.im = parse_real(toks[6], lineno);
    const std::array<long, 5> key{e.r[0], e.r[1], e.r[2], e.m, e.n};
    if (!seen.emplace(key, lineno).second)
      throw ParseError("duplicate (R, m, n) record", lineno);
    hr.entries.push_back(e);
    if (static_cast<long>(hr.entries.size()) > expected)
      throw CountMismatch("more records than nrpts * num_wann^2");
  }
  if (static_cast<long>(hr.entries.size()) != expected)
    throw CountMismatch("record count disagrees with header");
  return hr;
}

HrFile parse_hr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_hr(in);
}

void write_hr(std::ostream& out, const HrFile& hr) {
  out << hr.header_comment << "\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%12d\n", hr.num_wann);
  out << buf;
  std::snprintf(buf, sizeof buf, "%12d\n", hr.nrpts);
  out << buf;
  for (int i = 0; i < hr.nrpts; ++i) {
    std::snprintf(buf, sizeof buf, "%5d", hr.degeneracies[i]);
    out << buf;
    if (i % 15 == 14 || i == hr.nrpts - 1) out << "\n";
  }
  for (const auto& e : hr.entries) {
    std::snprintf(buf, sizeof buf, "%5d%5d%5d%5d%5d%16.8f%16.8f\n", e.r[0], e.r[1], e.r[2], e.m,
                  e.n, e.re, e.im);
    out << buf;
  }
}

void write_hr_file(const std::string& path, const HrFile& hr) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_hr(out, hr);
}

TightBindingModel to_model(const HrFile& hr, double fermi_shift, bool strict) {
  if (hr.degeneracies.size() != static_cast<std::size_t>(hr.nrpts))
    throw CountMismatch("degeneracies count disagrees with nrpts");

  // Group records by R in file order.
  std::vector<TightBindingModel::Term> terms;
  std::map<std::array<int, 3>, std::size_t> index;
  std::map<std::array<int, 3>, int> degeneracy;
  std::size_t r_seen = 0;
  for (const auto& e : hr.entries) {
    const std::array<int, 3> key{e.r[0], e.r[1], e.r[2]};
    auto it = index.find(key);
    if (it == index.end()) {
      if (r_seen >= static_cast<std::size_t>(hr.nrpts))
        throw CountMismatch("more distinct R vectors than nrpts");
      TightBindingModel::Term term;
      term.r = {e.r[0], e.r[1], e.r[2]};
      term.block = MatrixXcd::Zero(hr.num_wann, hr.num_wann);
      term.weight = 1.0;
      degeneracy[key] = hr.degeneracies[r_seen];
      it = index.emplace(key, terms.size()).first;
      terms.push_back(std::move(term));
      ++r_seen;
    }
    terms[it->second].block(e.m - 1, e.n - 1) =
        Complex(e.re, e.im) / static_cast<double>(degeneracy[key]);
  }
  for (auto& term : terms) {
    if (term.r.isZero()) term.block.diagonal().array() -= fermi_shift;
  }

  const bool planar = std::all_of(terms.begin(), terms.end(),
                                  [](const auto& t) { return t.r[2] == 0; });
  const bool linear =
      planar && std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.r[1] == 0; });
  const int dim = linear ? 1 : (planar ? 2 : 3);
  return TightBindingModel(dim, hr.num_wann, std::move(terms), strict, 1e-8);
}

HrFile from_model(const TightBindingModel& model, const std::string& comment) {
  HrFile hr;
  hr.header_comment = comment;
  hr.num_wann = model.num_bands();
  hr.nrpts = static_cast<int>(model.terms().size());
  hr.degeneracies.assign(hr.nrpts, 1);
  for (const auto& term : model.terms()) {
    for (int n = 1; n <= hr.num_wann; ++n)
      for (int m = 1; m <= hr.num_wann; ++m) {
        HrEntry e;
        e.r[0] = term.r[0];
        e.r[1] = term.r[1];
        e.r[2] = term.r[2];
        e.m = m;
        e.n = n;
        const Complex v = term.block(m - 1, n - 1) / term.weight;
        e.re = v.real();
        e.im = v.imag();
        hr.entries.push_back(e);
      }
  }
  return hr;
}

}  // namespace bzdos::wannier
