#include "sdmt/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>

#include "sdmt/errors.hpp"

namespace sdmt {

namespace {

std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_double(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid " + what + ": '" + token + "'");
  }
}

long long parse_integer(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid " + what + ": '" + token + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

// Complex literal: "1.5", "2i", "0.3+0.1i", "0.3-0.1i".
std::complex<double> parse_complex(const std::string& token) {
  const std::string s = trim(token);
  if (s.empty()) throw ConfigError("empty matrix entry");
  if (s.back() != 'i' && s.back() != 'j') {
    return {parse_double(s, "matrix entry"), 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  // Find the sign that splits real and imaginary parts (skip a leading sign
  // and exponent signs).
  for (std::size_t pos = body.size(); pos-- > 1;) {
    const char c = body[pos];
    if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
      const double re = parse_double(body.substr(0, pos), "matrix entry");
      std::string im_text = body.substr(pos);
      if (im_text == "+" || im_text == "-") im_text += "1";
      return {re, parse_double(im_text, "matrix entry")};
    }
  }
  std::string im_text = body.empty() ? "1" : body;
  if (im_text == "+" || im_text == "-") im_text += "1";
  return {0.0, parse_double(im_text, "matrix entry")};
}

}  // namespace

double parse_snr(const std::string& token) {
  const std::string s = trim(token);
  const std::string low = lower(s);
  if (low.size() > 2 && low.substr(low.size() - 2) == "db") {
    const double db = parse_double(trim(s.substr(0, s.size() - 2)), "SNR");
    return std::pow(10.0, db / 10.0);
  }
  const double v = parse_double(s, "SNR");
  if (!(v >= 0.0)) {
    throw ConfigError("SNR must be nonnegative: '" + token + "'");
  }
  return v;
}

std::vector<double> parse_number_list(const std::string& text, bool snr) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) throw ConfigError("empty entry in list '" + text + "'");
    out.push_back(snr ? parse_snr(item) : parse_double(item, "list entry"));
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

CovarianceSpec parse_covariance(const std::string& literal, int dim_hint) {
  const std::string s = trim(literal);
  const std::string low = lower(s);
  if (low == "identity") {
    if (dim_hint < 1) {
      throw ConfigError("covariance 'identity' needs the dimension (set m)");
    }
    return CovarianceSpec::identity(dim_hint);
  }
  auto bracket_body = [&](std::size_t prefix_len) {
    const std::string rest = trim(s.substr(prefix_len));
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') {
      throw ConfigError("expected [...] in covariance literal '" + s + "'");
    }
    return rest.substr(1, rest.size() - 2);
  };
  try {
    if (low.rfind("diag:", 0) == 0) {
      std::vector<double> entries;
      for (const std::string& item : split(bracket_body(5), ',')) {
        entries.push_back(parse_double(item, "diagonal entry"));
      }
      return CovarianceSpec::diagonal(std::move(entries));
    }
    if (low.rfind("matrix:", 0) == 0) {
      const std::vector<std::string> rows = split(bracket_body(7), ';');
      const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
      ComplexMatrix r(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        const std::vector<std::string> cells = split(rows[i], ',');
        if (static_cast<Eigen::Index>(cells.size()) != m) {
          throw ConfigError("covariance matrix must be square");
        }
        for (Eigen::Index j = 0; j < m; ++j) r(i, j) = parse_complex(cells[j]);
      }
      return CovarianceSpec::from_matrix(r);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("covariance rejected: ") + e.what());
  }
  throw ConfigError("unrecognized covariance literal '" + s +
                    "' (use identity, diag:[...], or matrix:[...])");
}

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin) {
  Scenario scenario;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::optional<std::string> covariance_literal;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    auto fail = [&](const std::string& msg) -> ConfigError {
      return ConfigError(origin + ":" + std::to_string(line_no) + ": " + msg);
    };
    if (eq == std::string::npos) throw fail("expected 'key = value'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw fail("missing value for '" + key + "'");
    try {
      if (key == "m") {
        scenario.system.m = static_cast<int>(parse_integer(value, "m"));
      } else if (key == "nc") {
        scenario.system.n_c = static_cast<int>(parse_integer(value, "nc"));
      } else if (key == "ns") {
        scenario.system.n_s = static_cast<int>(parse_integer(value, "ns"));
      } else if (key == "t") {
        scenario.system.t = lower(value) == "inf"
                                ? std::numeric_limits<double>::infinity()
                                : parse_double(value, "t");
      } else if (key == "rank") {
        scenario.rank = static_cast<int>(parse_integer(value, "rank"));
      } else if (key == "r") {
        covariance_literal = value;  // resolved after m is known
      } else if (key == "snr_grid") {
        scenario.snr_grid = parse_number_list(value, /*snr=*/true);
      } else if (key == "r_values") {
        scenario.r_values = parse_number_list(value, /*snr=*/false);
      } else if (key == "n_samples") {
        scenario.n_samples = parse_integer(value, "n_samples");
      } else if (key == "seed") {
        scenario.seed = static_cast<std::uint64_t>(
            parse_integer(value, "seed"));
      } else if (key == "workers") {
        scenario.workers = static_cast<int>(parse_integer(value, "workers"));
      } else {
        throw fail("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      if (what.rfind(origin, 0) == 0) throw;  // already line-tagged
      throw fail(what);
    }
  }
  if (covariance_literal) {
    scenario.covariance =
        parse_covariance(*covariance_literal, scenario.system.m);
  }
  return scenario;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), path);
}

}  // namespace sdmt
