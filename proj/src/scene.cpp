#include "thermflow/scene.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace thermflow {

namespace {

struct Pair {
  std::string key;
  std::string value;
  int line;
  int key_column;
  int value_column;
};

struct Section {
  std::string kind;
  std::string name;
  int line;
  int column;
  std::vector<Pair> pairs;
};

bool is_key_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses `key = value` pairs from line[pos..] into `section`.
void read_pairs(std::string_view line, std::size_t pos, int lineno, Section& section) {
  auto col = [&](std::size_t p) { return static_cast<int>(p) + 1; };
  for (;;) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size()) return;
    if (!is_key_start(line[pos])) throw ParseError("expected a key", lineno, col(pos));
    std::size_t key_start = pos;
    while (pos < line.size() && is_key_char(line[pos])) ++pos;
    std::string key(line.substr(key_start, pos - key_start));
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size() || line[pos] != '=')
      throw ParseError("expected '=' after '" + key + "'", lineno, col(pos));
    ++pos;
    while (pos < line.size() && is_space(line[pos])) ++pos;
    std::size_t value_start = pos;
    std::string value;
    if (key == "expr") {
      value = std::string(trim(line.substr(pos)));
      pos = line.size();
    } else {
      while (pos < line.size() && !is_space(line[pos])) ++pos;
      value = std::string(line.substr(value_start, pos - value_start));
    }
    if (value.empty()) throw ParseError("missing value for '" + key + "'", lineno, col(value_start));
    for (const auto& p : section.pairs)
      if (p.key == key) throw ParseError("duplicate key '" + key + "'", lineno, col(key_start));
    section.pairs.push_back({key, value, lineno, col(key_start), col(value_start)});
  }
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t pos = 0;
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size()) continue;

    if (line[pos] == '[') {
      std::size_t close = line.find(']', pos);
      if (close == std::string_view::npos)
        throw ParseError("unterminated section header", lineno, static_cast<int>(pos) + 1);
      std::istringstream header{std::string(line.substr(pos + 1, close - pos - 1))};
      Section s;
      s.line = lineno;
      s.column = static_cast<int>(pos) + 1;
      header >> s.kind >> s.name;
      std::string extra;
      if (header >> extra) throw ParseError("unexpected '" + extra + "' in section header", lineno, s.column);
      if (s.kind.empty()) throw ParseError("empty section header", lineno, s.column);
      sections.push_back(std::move(s));
      read_pairs(line, close + 1, lineno, sections.back());
    } else {
      if (sections.empty())
        throw ParseError("key outside of any section", lineno, static_cast<int>(pos) + 1);
      read_pairs(line, pos, lineno, sections.back());
    }
    if (end == text.size()) break;
  }
  return sections;
}

// Typed access to a section's pairs; reports unknown keys once done.
class Fields {
 public:
  explicit Fields(const Section& s) : s_(s), used_(s.pairs.size(), false) {}

  const Pair* find(std::string_view key) {
    for (std::size_t i = 0; i < s_.pairs.size(); ++i) {
      if (s_.pairs[i].key == key) {
        used_[i] = true;
        return &s_.pairs[i];
      }
    }
    return nullptr;
  }

  const Pair& require(std::string_view key) {
    if (const Pair* p = find(key)) return *p;
    throw ParseError("[" + s_.kind + (s_.name.empty() ? "" : " " + s_.name) + "] is missing '" +
                         std::string(key) + "'",
                     s_.line, s_.column);
  }

  Rational rational(std::string_view key) { return to_rational(require(key)); }

  std::optional<Rational> optional_rational(std::string_view key) {
    if (const Pair* p = find(key)) return to_rational(*p);
    return std::nullopt;
  }

  std::optional<std::string> text(std::string_view key) {
    if (const Pair* p = find(key)) return p->value;
    return std::nullopt;
  }

  void finish() const {
    for (std::size_t i = 0; i < s_.pairs.size(); ++i)
      if (!used_[i])
        throw ParseError("unknown key '" + s_.pairs[i].key + "' in [" + s_.kind + "]",
                         s_.pairs[i].line, s_.pairs[i].key_column);
  }

  static Rational to_rational(const Pair& p) {
    try {
      return Rational::parse(p.value);
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), p.line, p.value_column);
    }
  }

  [[noreturn]] static void bad_value(const Pair& p, const std::string& what) {
    throw ParseError(what + " '" + p.value + "' for " + p.key, p.line, p.value_column);
  }

  const Section& section() const { return s_; }

 private:
  const Section& s_;
  std::vector<bool> used_;
};

ThermalEntity read_entity(Fields& f) {
  ThermalEntity e;
  e.id = f.section().name;
  if (const Pair* k = f.find("kind")) {
    auto kind = parse_entity_kind(k->value);
    if (!kind) Fields::bad_value(*k, "unknown entity kind");
    e.kind = *kind;
  }
  e.heatCap = f.rational("heatCap");
  e.mass = f.rational("mass");
  e.temp = f.rational("temp");
  if (e.kind == EntityKind::water) {
    const Pair& ph = f.require("phase");
    auto phase = parse_phase(ph.value);
    if (!phase) Fields::bad_value(ph, "unknown phase");
    e.phase = *phase;
    e.mode = is_transitional(e.phase) ? CompMode::phaseChange : CompMode::normal;
    e.heatTrans = f.optional_rational("heatTrans").value_or(Rational(0));
  }
  return e;
}

ThermalInteraction read_interaction(Fields& f) {
  ThermalInteraction i;
  i.id = f.section().name;
  const Pair& type = f.require("type");
  if (type.value == "conduction")
    i.params = Conduction{f.rational("thermCond"), f.rational("thickness")};
  else if (type.value == "convection")
    i.params = Convection{f.rational("convCoeff")};
  else if (type.value == "radiation")
    i.params = Radiation{f.rational("emissiv")};
  else
    Fields::bad_value(type, "unknown interaction type");
  i.entity1 = f.require("entity1").value;
  i.entity2 = f.require("entity2").value;
  i.area = f.rational("area");
  i.qdot = f.optional_rational("qdot").value_or(Rational(0));
  return i;
}

HeatGenerator read_heater(Fields& f) {
  HeatGenerator g;
  g.id = f.section().name;
  g.entity = f.require("entity").value;
  const Pair* status = f.find("status");
  if (status) {
    auto s = parse_status(status->value);
    if (!s) Fields::bad_value(*status, "unknown heater status");
    SmartParams sp;
    sp.status = *s;
    sp.lowTemp = f.rational("lowTemp");
    sp.highTemp = f.rational("highTemp");
    sp.capacity = f.rational("capacity");
    g.qdot = f.optional_rational("qdot").value_or(sp.status == HeaterStatus::on ? sp.capacity : Rational(0));
    g.smart = sp;
  } else {
    g.qdot = f.rational("qdot");
  }
  return g;
}

void read_params(Fields& f, SceneParams& p) {
  if (auto v = f.optional_rational("timeStep")) p.timeStep = *v;
  if (const Pair* prec = f.find("precision")) {
    const auto& s = prec->value;
    bool digits = !s.empty() && s.size() < 4 &&
                  std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!digits || std::stoi(s) < 1) Fields::bad_value(*prec, "precision must be a positive integer, got");
    p.precision = std::stoi(s);
  }
  auto& k = p.constants;
  if (auto v = f.optional_rational("stefBolz")) k.stefBolz = *v;
  if (auto v = f.optional_rational("latentFusion")) k.latentFusion = *v;
  if (auto v = f.optional_rational("latentVapor")) k.latentVapor = *v;
  if (auto v = f.optional_rational("meltPoint")) k.meltPoint = *v;
  if (auto v = f.optional_rational("boilPoint")) k.boilPoint = *v;

  const Section& s = f.section();
  auto positive = [&](const char* key, const Rational& v) {
    if (v.sign() <= 0) {
      const Pair* pr = f.find(key);
      throw ParseError(std::string(key) + " must be positive", pr ? pr->line : s.line,
                       pr ? pr->value_column : s.column);
    }
  };
  positive("timeStep", p.timeStep);
  positive("stefBolz", k.stefBolz);
  positive("latentFusion", k.latentFusion);
  positive("latentVapor", k.latentVapor);
  if (k.meltPoint >= k.boilPoint) throw ParseError("meltPoint must be below boilPoint", s.line, s.column);
}

}  // namespace

std::set<std::string, std::less<>> SceneDef::prop_names() const {
  std::set<std::string, std::less<>> names;
  for (const auto& [name, pred] : props) names.insert(name);
  return names;
}

SceneDef parse_scene(std::string_view text) {
  SceneDef scene;
  std::vector<Section> sections = split_sections(text);
  std::map<std::string, const Section*, std::less<>> object_sections;
  std::vector<const Section*> prop_sections;
  bool seen_params = false;

  for (const auto& s : sections) {
    Fields f(s);
    if (s.kind == "params") {
      if (!s.name.empty()) throw ParseError("[params] takes no name", s.line, s.column);
      if (seen_params) throw ParseError("duplicate [params] section", s.line, s.column);
      seen_params = true;
      read_params(f, scene.params);
      f.finish();
      continue;
    }
    if (s.name.empty()) throw ParseError("[" + s.kind + "] needs a name", s.line, s.column);
    if (s.kind == "prop") {
      if (scene.props.count(s.name) || std::any_of(prop_sections.begin(), prop_sections.end(),
                                                   [&](const Section* p) { return p->name == s.name; }))
        throw ParseError("duplicate prop '" + s.name + "'", s.line, s.column);
      f.require("expr");
      f.finish();
      prop_sections.push_back(&s);
      continue;
    }

    Object obj;
    if (s.kind == "entity")
      obj = read_entity(f);
    else if (s.kind == "interaction")
      obj = read_interaction(f);
    else if (s.kind == "heater")
      obj = read_heater(f);
    else
      throw ParseError("unknown section kind '" + s.kind + "'", s.line, s.column);
    f.finish();
    if (scene.objects.contains(s.name))
      throw ParseError("duplicate object id '" + s.name + "'", s.line, s.column);
    scene.objects.insert(std::move(obj));
    object_sections[s.name] = &s;
  }

  auto report = validate(scene.objects);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    const Section* s = object_sections.at(v.id);
    int line = s->line, column = s->column;
    for (const auto& p : s->pairs)
      if (p.key == v.field) line = p.line, column = p.value_column;
    throw ParseError(v.id + ": " + v.message, line, column);
  }

  for (const Section* s : prop_sections) {
    const Pair& expr = *std::find_if(s->pairs.begin(), s->pairs.end(),
                                     [](const Pair& p) { return p.key == "expr"; });
    scene.props.emplace(s->name, parse_predicate(expr.value, scene.objects, expr.line, expr.value_column));
  }
  return scene;
}

SceneDef load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read scene file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

std::string serialize_scene(const SceneDef& scene) {
  std::ostringstream os;
  const auto& p = scene.params;
  const auto& k = p.constants;
  os << "[params]\n"
     << "timeStep = " << p.timeStep << "\n"
     << "precision = " << p.precision << "\n"
     << "stefBolz = " << k.stefBolz << "\n"
     << "latentFusion = " << k.latentFusion << "\n"
     << "latentVapor = " << k.latentVapor << "\n"
     << "meltPoint = " << k.meltPoint << "\n"
     << "boilPoint = " << k.boilPoint << "\n";

  for (const auto* e : scene.objects.all<ThermalEntity>()) {
    os << "\n[entity " << e->id << "]\n"
       << "kind = " << to_string(e->kind) << "\n"
       << "heatCap = " << e->heatCap << "\n"
       << "mass = " << e->mass << "\n"
       << "temp = " << e->temp << "\n";
    if (e->kind == EntityKind::water)
      os << "phase = " << to_string(e->phase) << "\n"
         << "heatTrans = " << e->heatTrans << "\n";
  }
  for (const auto* i : scene.objects.all<ThermalInteraction>()) {
    os << "\n[interaction " << i->id << "]\n"
       << "type = " << interaction_kind_name(i->params) << "\n"
       << "entity1 = " << i->entity1 << "\n"
       << "entity2 = " << i->entity2 << "\n"
       << "area = " << i->area << "\n";
    if (const auto* c = std::get_if<Conduction>(&i->params))
      os << "thermCond = " << c->thermCond << "\nthickness = " << c->thickness << "\n";
    else if (const auto* v = std::get_if<Convection>(&i->params))
      os << "convCoeff = " << v->convCoeff << "\n";
    else
      os << "emissiv = " << std::get<Radiation>(i->params).emissiv << "\n";
    os << "qdot = " << i->qdot << "\n";
  }
  for (const auto* g : scene.objects.all<HeatGenerator>()) {
    os << "\n[heater " << g->id << "]\n"
       << "entity = " << g->entity << "\n"
       << "qdot = " << g->qdot << "\n";
    if (g->smart)
      os << "status = " << to_string(g->smart->status) << "\n"
         << "lowTemp = " << g->smart->lowTemp << "\n"
         << "highTemp = " << g->smart->highTemp << "\n"
         << "capacity = " << g->smart->capacity << "\n";
  }
  for (const auto& [name, pred] : scene.props)
    os << "\n[prop " << name << "]\nexpr = " << pred.source() << "\n";
  return os.str();
}

SceneDef builtin(std::string_view name) {
  const CoffeeRoomConstants t;
  SceneDef scene;

  ThermalEntity coffee{.id = "coffee", .heatCap = t.coffeeHC, .mass = t.coffeeMass, .temp = Rational(70)};
  ThermalEntity room{.id = "room", .heatCap = t.roomHC, .mass = t.roomMass, .temp = Rational(20)};
  ThermalInteraction conduct{.id = "crConduct",
                             .params = Conduction{t.thermCond, t.cupThickness},
                             .entity1 = "coffee",
                             .entity2 = "room",
                             .area = t.condArea()};
  ThermalInteraction convect{.id = "crConvect",
                             .params = Convection{t.convCoeff},
                             .entity1 = "coffee",
                             .entity2 = "room",
                             .area = t.convArea()};
  scene.objects = {room, conduct, convect};

  if (name == "cs1") {
    scene.objects.insert(coffee);
  } else if (name == "cs2") {
    coffee.kind = EntityKind::water;
    coffee.temp = Rational(-10);
    coffee.phase = Phase::solid;
    scene.objects.insert(coffee);
    scene.objects.insert(HeatGenerator{.id = "boiler", .entity = "coffee", .qdot = Rational(3, 2)});
  } else if (name == "cs3") {
    coffee.kind = EntityKind::water;
    coffee.temp = Rational(-20);
    coffee.phase = Phase::liquid;
    scene.objects.insert(coffee);
    scene.objects.insert(HeatGenerator{
        .id = "coffeeHeater",
        .entity = "coffee",
        .qdot = Rational(0),
        .smart = SmartParams{HeaterStatus::off, Rational(70), Rational(80), Rational(3, 2)}});
    const char* temp_ok = "temp(coffee) >= 139/2 and temp(coffee) <= 161/2";
    scene.props.emplace("temp-ok", parse_predicate(temp_ok, scene.objects));
  } else {
    throw Error("unknown builtin scene '" + std::string(name) + "' (expected cs1, cs2 or cs3)");
  }
  return scene;
}

}  // namespace thermflow
