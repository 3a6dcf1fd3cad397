#include "gnk/trajectory_io.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <system_error>

#include "gnk/error.hpp"

namespace gnk::geometry {

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

double parse_double(std::string_view token, int line) {
  double x = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    fail(line, "bad number '" + std::string(token) + "'");
  }
  return x;
}

int parse_int(std::string_view token, int line) {
  int x = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    fail(line, "bad integer '" + std::string(token) + "'");
  }
  return x;
}

// Value of `key=value` or nothing if the token has another key.
std::optional<std::string_view> keyed(std::string_view token, std::string_view key) {
  if (token.size() > key.size() && token.substr(0, key.size()) == key && token[key.size()] == '=') {
    return token.substr(key.size() + 1);
  }
  return std::nullopt;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string format_trajectory(const Trajectory& traj) {
  const GroupParams& p = traj.params();
  std::ostringstream out;
  out << "trajectory n=" << p.n << " k=" << p.k << " mode=" << to_string(traj.mode())
      << " pieces=" << traj.piece_count() << "\n";
  out << "breakpoints";
  for (double b : traj.breakpoints()) out << ' ' << shortest(b);
  out << "\n";
  for (int i = 0; i < p.n; ++i) {
    for (int c = 0; c < traj.dimension(); ++c) {
      for (int b = 0; b < traj.piece_count(); ++b) {
        out << "coef point=" << i + 1 << " coord=" << c + 1 << " piece=" << b + 1 << " :";
        for (double x : traj.coeffs(i, c, b)) out << ' ' << shortest(x);
        out << "\n";
      }
    }
  }
  return out.str();
}

Trajectory parse_trajectory(std::string_view text) {
  std::optional<GroupParams> params;
  Mode mode = Mode::Affine;
  int pieces = 0;
  std::vector<double> breakpoints;
  std::vector<std::vector<std::vector<Polynomial>>> coeffs;
  std::vector<std::vector<std::vector<bool>>> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "trajectory") {
      if (params) fail(line_no, "duplicate header");
      int n = -1, k = -1;
      bool have_mode = false;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (auto v = keyed(tokens[i], "n")) {
          n = parse_int(*v, line_no);
        } else if (auto v2 = keyed(tokens[i], "k")) {
          k = parse_int(*v2, line_no);
        } else if (auto v3 = keyed(tokens[i], "pieces")) {
          pieces = parse_int(*v3, line_no);
        } else if (auto v4 = keyed(tokens[i], "mode")) {
          have_mode = true;
          if (*v4 == "affine") {
            mode = Mode::Affine;
          } else if (*v4 == "projective") {
            mode = Mode::Projective;
          } else {
            fail(line_no, "unknown mode '" + std::string(*v4) + "'");
          }
        } else {
          fail(line_no, "unknown header field '" + std::string(tokens[i]) + "'");
        }
      }
      if (n < 0 || k < 0 || pieces <= 0 || !have_mode) fail(line_no, "header needs n, k, mode and pieces");
      params = GroupParams::make(n, k);
      const int dim = ambient_dimension(*params, mode);
      coeffs.assign(static_cast<std::size_t>(n),
                    std::vector<std::vector<Polynomial>>(static_cast<std::size_t>(dim),
                                                         std::vector<Polynomial>(static_cast<std::size_t>(pieces))));
      seen.assign(static_cast<std::size_t>(n),
                  std::vector<std::vector<bool>>(static_cast<std::size_t>(dim),
                                                 std::vector<bool>(static_cast<std::size_t>(pieces), false)));
      continue;
    }
    if (!params) fail(line_no, "missing 'trajectory' header");

    if (tokens[0] == "breakpoints") {
      if (!breakpoints.empty()) fail(line_no, "duplicate breakpoints");
      for (std::size_t i = 1; i < tokens.size(); ++i) breakpoints.push_back(parse_double(tokens[i], line_no));
      if (static_cast<int>(breakpoints.size()) != pieces + 1) fail(line_no, "expected pieces+1 breakpoints");
      continue;
    }
    if (tokens[0] == "coef") {
      int point = -1, coord = -1, piece = -1;
      std::size_t i = 1;
      for (; i < tokens.size() && tokens[i] != ":"; ++i) {
        if (auto v = keyed(tokens[i], "point")) {
          point = parse_int(*v, line_no);
        } else if (auto v2 = keyed(tokens[i], "coord")) {
          coord = parse_int(*v2, line_no);
        } else if (auto v3 = keyed(tokens[i], "piece")) {
          piece = parse_int(*v3, line_no);
        } else {
          fail(line_no, "unknown coef field '" + std::string(tokens[i]) + "'");
        }
      }
      if (i == tokens.size()) fail(line_no, "missing ':' before coefficients");
      const int dim = ambient_dimension(*params, mode);
      if (point < 1 || point > params->n || coord < 1 || coord > dim || piece < 1 || piece > pieces) {
        fail(line_no, "coef index out of range");
      }
      auto& slot = seen[static_cast<std::size_t>(point - 1)][static_cast<std::size_t>(coord - 1)];
      if (slot[static_cast<std::size_t>(piece - 1)]) fail(line_no, "duplicate coef entry");
      slot[static_cast<std::size_t>(piece - 1)] = true;
      Polynomial poly;
      for (++i; i < tokens.size(); ++i) poly.push_back(parse_double(tokens[i], line_no));
      if (poly.empty()) fail(line_no, "empty coefficient list");
      coeffs[static_cast<std::size_t>(point - 1)][static_cast<std::size_t>(coord - 1)]
            [static_cast<std::size_t>(piece - 1)] = std::move(poly);
      continue;
    }
    fail(line_no, "unknown directive '" + std::string(tokens[0]) + "'");
  }

  if (!params) throw Error(ErrorCode::ParseError, "empty trajectory file");
  if (breakpoints.empty()) throw Error(ErrorCode::ParseError, "missing breakpoints line");
  for (const auto& point : seen) {
    for (const auto& coord : point) {
      for (bool b : coord) {
        if (!b) throw Error(ErrorCode::ParseError, "missing coef entries");
      }
    }
  }
  return Trajectory(*params, mode, std::move(breakpoints), std::move(coeffs));
}

}  // namespace gnk::geometry
