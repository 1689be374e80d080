#include "luinv/state_io.hpp"

#include <cctype>

#include "luinv/errors.hpp"

namespace luinv {

namespace {

int parse_count(const std::string& tok, std::size_t from, const std::string& text) {
  if (from >= tok.size()) throw ParseError("spec '" + text + "': missing particle count in '" + tok + "'");
  for (std::size_t i = from; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError("spec '" + text + "': bad token '" + tok + "'");
  const int v = std::stoi(tok.substr(from));
  if (v < 1) throw ParseError("spec '" + text + "': particle counts must be positive");
  return v;
}

std::vector<int> read_index(const nlohmann::json& j, std::size_t len, const char* what) {
  if (!j.is_array() || j.size() != len)
    throw ParseError(std::string("state file: '") + what + "' must be an array of length " + std::to_string(len));
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError(std::string("state file: '") + what + "' must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

Complex read_value(const nlohmann::json& e) {
  const double re = e.value("re", 0.0);
  const double im = e.value("im", 0.0);
  return {re, im};
}

void read_header(const nlohmann::json& j, ParticleSpec& spec, std::vector<int>& dims) {
  if (!j.is_object()) throw ParseError("state file: top level must be an object");
  if (!j.contains("spec") || !j["spec"].is_string()) throw ParseError("state file: missing string field 'spec'");
  spec = parse_spec(j["spec"].get<std::string>());
  if (!j.contains("dims") || !j["dims"].is_array()) throw ParseError("state file: missing array field 'dims'");
  dims = read_index(j["dims"], static_cast<std::size_t>(spec.k()), "dims");
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("state file: missing array field 'entries'");
}

nlohmann::json header(const ParticleSpec& spec, const std::vector<int>& dims) {
  return {{"spec", format_spec(spec)}, {"dims", dims}, {"entries", nlohmann::json::array()}};
}

std::vector<int> unflatten(std::size_t flat, const std::vector<int>& shape) {
  std::vector<int> idx(shape.size());
  for (std::size_t p = shape.size(); p-- > 0;) {
    idx[p] = static_cast<int>(flat % static_cast<std::size_t>(shape[p]));
    flat /= static_cast<std::size_t>(shape[p]);
  }
  return idx;
}

}  // namespace

ParticleSpec parse_spec(const std::string& text) {
  std::string body = text;
  bool mixed = false;
  const std::string suffix = "+mixed";
  if (body.size() >= suffix.size() && body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0) {
    mixed = true;
    body.resize(body.size() - suffix.size());
  }
  if (body.empty()) throw ParseError("spec '" + text + "': empty");

  std::vector<std::string> toks;
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    toks.push_back(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  std::vector<Partition> types;
  std::vector<int> open;  // parts of a p-partition being read
  auto close = [&] {
    if (open.empty()) return;
    for (std::size_t i = 1; i < open.size(); ++i)
      if (open[i] > open[i - 1]) throw ParseError("spec '" + text + "': partition parts must be weakly decreasing");
    types.emplace_back(open);
    open.clear();
  };
  bool in_p = false;
  for (const auto& tok : toks) {
    if (tok.empty()) throw ParseError("spec '" + text + "': empty token");
    const char c = tok[0];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (!in_p) throw ParseError("spec '" + text + "': number '" + tok + "' outside a p-partition");
      open.push_back(parse_count(tok, 0, text));
      continue;
    }
    close();
    in_p = false;
    if (c == 'b') {
      types.push_back(Partition::row(parse_count(tok, 1, text)));
    } else if (c == 'f') {
      types.push_back(Partition::column(parse_count(tok, 1, text)));
    } else if (c == 'p') {
      in_p = true;
      open.push_back(parse_count(tok, 1, text));
    } else {
      throw ParseError("spec '" + text + "': unknown particle kind '" + std::string(1, c) + "' (use b, f or p)");
    }
  }
  close();
  if (mixed) types.push_back(Partition{1});
  return ParticleSpec(std::move(types));
}

std::string format_spec(const ParticleSpec& spec) {
  std::string out;
  for (const auto& t : spec.types()) {
    if (!out.empty()) out += ',';
    if (t.is_row()) {
      out += "b" + std::to_string(t.weight());
    } else if (t.is_column()) {
      out += "f" + std::to_string(t.weight());
    } else {
      out += 'p';
      for (std::size_t i = 0; i < t.parts().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(t.parts()[i]);
      }
    }
  }
  return out;
}

StateTensor state_from_json(const nlohmann::json& j) {
  ParticleSpec spec;
  std::vector<int> dims;
  read_header(j, spec, dims);
  StateTensor psi = StateTensor::zeros(spec, dims);
  const auto len = psi.shape().size();
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("index")) throw ParseError("state file: every entry needs an 'index'");
    const auto idx = read_index(e["index"], len, "index");
    try {
      psi.at(idx) += read_value(e);
    } catch (const ArgumentError& err) {
      throw ParseError(std::string("state file: ") + err.what());
    }
  }
  return symmetrize(std::move(psi.coeffs), spec, dims);
}

nlohmann::json state_to_json(const StateTensor& psi) {
  auto j = header(psi.spec, psi.dims);
  const auto shape = psi.shape();
  for (std::size_t f = 0; f < psi.coeffs.size(); ++f) {
    const Complex v = psi.coeffs[f];
    if (v == Complex(0)) continue;
    const auto idx = unflatten(f, shape);
    j["entries"].push_back({{"index", idx}, {"re", v.real()}, {"im", v.imag()}});
  }
  return j;
}

DensityTensor density_from_json(const nlohmann::json& j) {
  ParticleSpec spec;
  std::vector<int> dims;
  read_header(j, spec, dims);
  StateTensor probe = StateTensor::zeros(spec, dims);
  const auto len = probe.shape().size();
  const auto n = static_cast<Eigen::Index>(probe.coeffs.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("row") || !e.contains("col"))
      throw ParseError("density file: every entry needs 'row' and 'col'");
    try {
      const auto r = static_cast<Eigen::Index>(probe.flat_index(read_index(e["row"], len, "row")));
      const auto c = static_cast<Eigen::Index>(probe.flat_index(read_index(e["col"], len, "col")));
      m(r, c) += read_value(e);
    } catch (const ArgumentError& err) {
      throw ParseError(std::string("density file: ") + err.what());
    }
  }
  try {
    return DensityTensor::from_matrix(spec, dims, std::move(m));
  } catch (const ArgumentError& err) {
    throw ParseError(std::string("density file: ") + err.what());
  }
}

nlohmann::json density_to_json(const DensityTensor& rho) {
  auto j = header(rho.spec, rho.dims);
  std::vector<int> shape;
  for (int t = 0; t < rho.spec.k(); ++t)
    for (int q = 0; q < rho.spec.l(t); ++q) shape.push_back(rho.dims[static_cast<std::size_t>(t)]);
  for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) {
      const Complex v = rho.matrix(r, c);
      if (v == Complex(0)) continue;
      j["entries"].push_back({{"row", unflatten(static_cast<std::size_t>(r), shape)},
                              {"col", unflatten(static_cast<std::size_t>(c), shape)},
                              {"re", v.real()},
                              {"im", v.imag()}});
    }
  return j;
}

nlohmann::json evaluation_record(const GraphClass& g, Complex value) {
  return {{"graph_id", g.id()}, {"value_re", value.real()}, {"value_im", value.imag()}};
}

}  // namespace luinv
