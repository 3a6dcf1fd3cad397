#include "gnk/word_io.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "gnk/error.hpp"

namespace gnk {

namespace {

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (!comment) out.push_back(c);
  }
  return out;
}

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  return value;
}

Generator parse_letter(std::string_view token, const GroupParams& params) {
  if (token.size() < 2 || token.front() != '{' || token.back() != '}') {
    throw Error(ErrorCode::ParseError, "expected a letter like {1,2,3}, got '" + std::string(token) + "'");
  }
  std::vector<int> indices;
  std::string_view body = token.substr(1, token.size() - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    indices.push_back(parse_int(body.substr(0, comma), token));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) throw Error(ErrorCode::ParseError, "trailing comma in '" + std::string(token) + "'");
  }
  return Generator::make(indices, params);
}

Word parse_letters(const std::vector<std::string>& toks, std::size_t first, const GroupParams& params) {
  std::vector<Generator> letters;
  for (std::size_t i = first; i < toks.size(); ++i) {
    if (toks[i] == "e") continue;
    letters.push_back(parse_letter(toks[i], params));
  }
  return Word(params, std::move(letters));
}

}  // namespace

std::string format_generator(Generator g) {
  std::string out = "{";
  bool first = true;
  for (int i : g.indices()) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (Generator g : w.letters()) {
    if (!out.empty()) out += ' ';
    out += format_generator(g);
  }
  return out;
}

std::string format_word_file(const Word& w) {
  return to_string(w.params()) + "\n" + format_word(w) + "\n";
}

std::string format_parity(const ParityVector& parity) {
  if (parity.is_zero()) return "0";
  std::string out;
  for (Generator g : parity.support()) {
    if (!out.empty()) out += ' ';
    out += format_generator(g);
  }
  return out;
}

Word parse_word(std::string_view text, const GroupParams& params) {
  return parse_letters(tokens(strip_comments(text)), 0, params);
}

Word parse_word_file(std::string_view text) {
  const auto toks = tokens(strip_comments(text));
  std::optional<int> n;
  std::optional<int> k;
  std::size_t i = 0;
  for (; i < toks.size() && i < 2; ++i) {
    const std::string_view t = toks[i];
    if (t.starts_with("n=")) {
      n = parse_int(t.substr(2), "header");
    } else if (t.starts_with("k=")) {
      k = parse_int(t.substr(2), "header");
    } else {
      break;
    }
  }
  if (!n || !k) throw Error(ErrorCode::ParseError, "missing 'n=.. k=..' header");
  return parse_letters(toks, i, GroupParams::make(*n, *k));
}

}  // namespace gnk
