#include "fiberprod_cli/instance_io.hpp"

#include <fstream>

#include "fiberprod/error.hpp"

namespace fiberprod::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

std::vector<std::string> tokens_at(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array of letter tokens");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(string_at(value[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

AlphabetPtr alphabet_at(const json& value, const std::string& path, const std::string& name) {
  try {
    return Alphabet::make(name, tokens_at(value, path));
  } catch (const ValidationError& e) {
    if (std::string(e.what()).rfind("$", 0) == 0) throw;
    fail(path, e.what());
  }
}

Quotient quotient_at(const json& q, const std::string& path) {
  const std::string type = string_at(field(q, path, "type"), path + ".type");
  try {
    if (type == "free") {
      return Quotient::free(alphabet_at(field(q, path, "alphabet"), path + ".alphabet", "C"));
    }
    if (type == "finite") {
      const auto& t = field(q, path, "table");
      const std::string tpath = path + ".table";
      if (!t.is_array()) fail(tpath, "expected an array of rows");
      std::vector<std::vector<Element>> rows;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string rpath = tpath + "[" + std::to_string(i) + "]";
        if (!t[i].is_array()) fail(rpath, "expected an array of element indices");
        std::vector<Element> row;
        for (std::size_t j = 0; j < t[i].size(); ++j) {
          if (!t[i][j].is_number_unsigned()) {
            fail(rpath + "[" + std::to_string(j) + "]", "expected a non-negative integer");
          }
          row.push_back(t[i][j].get<Element>());
        }
        rows.push_back(std::move(row));
      }
      std::vector<std::string> names;
      if (q.contains("names")) names = tokens_at(q["names"], path + ".names");
      try {
        return Quotient::finite(
            std::make_shared<const FiniteAlgebra>(FiniteAlgebra::validate(rows, names)));
      } catch (const ValidationError& e) {
        fail(tpath, e.what());
      }
    }
    if (type == "free_commutative") {
      const auto& r = field(q, path, "rank");
      if (!r.is_number_unsigned()) fail(path + ".rank", "expected a positive integer");
      return Quotient::free_commutative(r.get<std::size_t>());
    }
  } catch (const GuardExceeded& e) {
    fail(path, e.what());
  }
  fail(path + ".type", "unknown quotient type '" + type + "'");
}

QuotientElement image_at(const json& value, const std::string& path, const Quotient& q) {
  try {
    switch (q.kind()) {
      case QuotientKind::Free:
        return Word::parse(q.alphabet(), string_at(value, path));
      case QuotientKind::FiniteTable: {
        if (value.is_number_unsigned()) {
          const auto x = value.get<Element>();
          if (x >= q.table().size()) fail(path, "element index out of range");
          return TableElement{x};
        }
        const auto name = string_at(value, path);
        auto x = q.table().find(name);
        if (!x) fail(path, "unknown element '" + name + "'");
        return TableElement{*x};
      }
      case QuotientKind::FreeCommutative: {
        if (value.is_number_unsigned() && q.rank() == 1) {
          return CommVector{value.get<std::uint64_t>()};
        }
        if (!value.is_array()) fail(path, "expected an array of non-negative integers");
        CommVector v;
        for (const auto& x : value) {
          if (!x.is_number_unsigned()) fail(path, "expected non-negative integers");
          v.push_back(x.get<std::uint64_t>());
        }
        if (v.size() != q.rank()) {
          fail(path, "expected a vector of length " + std::to_string(q.rank()));
        }
        return v;
      }
    }
  } catch (const ValidationError& e) {
    if (std::string(e.what()).rfind("$", 0) == 0) throw;
    fail(path, e.what());
  }
  fail(path, "unsupported quotient");
}

HomSpec side_at(const json& side, const std::string& path, const std::string& name, Mode mode,
                const Quotient& q, bool require_surjective) {
  const auto alphabet = alphabet_at(field(side, path, "alphabet"), path + ".alphabet", name);
  const auto& images = field(side, path, "images");
  const std::string ipath = path + ".images";
  if (!images.is_object()) fail(ipath, "expected an object mapping letters to images");
  for (auto it = images.begin(); it != images.end(); ++it) {
    if (!alphabet->find(it.key())) fail(ipath + "." + it.key(), "not a letter of the alphabet");
  }
  std::vector<QuotientElement> out;
  for (const auto& token : alphabet->tokens()) {
    auto it = images.find(token);
    if (it == images.end()) fail(ipath, "missing image for letter '" + token + "'");
    out.push_back(image_at(*it, ipath + "." + token, q));
  }
  try {
    HomSpec h(alphabet, mode, q, std::move(out));
    if (auto s = h.is_surjective(); require_surjective && !s.surjective) {
      fail(path, "not surjective: " + s.reason);
    }
    return h;
  } catch (const ValidationError& e) {
    if (std::string(e.what()).rfind("$", 0) == 0) throw;
    fail(path, e.what());
  }
}

json image_json(const QuotientElement& e, const Quotient& q) {
  switch (q.kind()) {
    case QuotientKind::Free:
      return std::get<Word>(e).str();
    case QuotientKind::FiniteTable:
      return q.table().name(std::get<TableElement>(e).index);
    case QuotientKind::FreeCommutative:
      return std::get<CommVector>(e);
  }
  return nullptr;
}

json side_json(const HomSpec& h) {
  json images = json::object();
  for (Letter x = 0; x < h.source()->size(); ++x) {
    images[h.source()->token(x)] = image_json(h.image(x), h.target());
  }
  return {{"alphabet", h.source()->tokens()}, {"images", images}};
}

}  // namespace

InstanceFile parse_instance(const json& doc) {
  if (!doc.is_object()) fail("$", "expected an object");
  const std::string mode_text = string_at(field(doc, "$", "mode"), "$.mode");
  Mode mode;
  if (mode_text == "monoid") {
    mode = Mode::Monoid;
  } else if (mode_text == "semigroup") {
    mode = Mode::Semigroup;
  } else {
    fail("$.mode", "expected \"monoid\" or \"semigroup\"");
  }
  bool require_surjective = true;
  if (doc.contains("allow_non_surjective")) {
    if (!doc["allow_non_surjective"].is_boolean()) fail("$.allow_non_surjective", "expected a boolean");
    require_surjective = !doc["allow_non_surjective"].get<bool>();
  }
  const Quotient q = quotient_at(field(doc, "$", "quotient"), "$.quotient");
  HomSpec phi = side_at(field(doc, "$", "left"), "$.left", "A", mode, q, require_surjective);
  HomSpec psi = side_at(field(doc, "$", "right"), "$.right", "B", mode, q, require_surjective);
  InstanceFile file{doc.value("name", std::string{}), doc.value("description", std::string{}),
                    FiberInstance(std::move(phi), std::move(psi), require_surjective)};
  return file;
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string() + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return parse_instance(doc);
}

json to_json(const InstanceFile& file) {
  const auto& inst = file.instance;
  const auto& q = inst.quotient();
  json quotient;
  switch (q.kind()) {
    case QuotientKind::Free:
      quotient = {{"type", "free"}, {"alphabet", q.alphabet()->tokens()}};
      break;
    case QuotientKind::FiniteTable:
      quotient = {{"type", "finite"}, {"table", q.table().rows()}, {"names", q.table().names()}};
      break;
    case QuotientKind::FreeCommutative:
      quotient = {{"type", "free_commutative"}, {"rank", q.rank()}};
      break;
  }
  json doc = json::object();
  if (!file.name.empty()) doc["name"] = file.name;
  if (!file.description.empty()) doc["description"] = file.description;
  doc["mode"] = to_string(inst.mode());
  if (!inst.surjectivity_checked()) doc["allow_non_surjective"] = true;
  doc["quotient"] = quotient;
  doc["left"] = side_json(inst.phi());
  doc["right"] = side_json(inst.psi());
  return doc;
}

json to_json(const PairWord& p) { return json::array({p.left.str(), p.right.str()}); }

}  // namespace fiberprod::cli
