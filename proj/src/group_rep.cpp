#include "bggforge/group_rep.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#ifndef BGGFORGE_FIXTURE_PATH
#define BGGFORGE_FIXTURE_PATH "data/a5_fixture.txt"
#endif

namespace bggforge {

namespace {

constexpr const char* kLabels[kNumIrreps] = {"chi1", "chi3", "sigma_chi3", "chi4", "chi5"};
constexpr const char* kPretty[kNumIrreps] = {"χ1", "χ3", "σχ3", "χ4", "χ5"};

}  // namespace

const char* irrep_label(int l) { return kLabels[l]; }
const char* irrep_pretty(int l) { return kPretty[l]; }

std::optional<int> parse_irrep_label(std::string_view s) {
    for (int l = 0; l < kNumIrreps; ++l)
        if (s == kLabels[l] || s == kPretty[l]) return l;
    return std::nullopt;
}

// ---- Permutation ----

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int x : img_) {
        if (x < 0 || x >= degree() || seen[static_cast<std::size_t>(x)])
            throw std::invalid_argument("not a permutation");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return Permutation(std::move(v));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
    std::vector<int> v;
    for (int x : images) v.push_back(x - 1);
    return Permutation(std::move(v));
}

Permutation operator*(const Permutation& g, const Permutation& h) {
    if (g.degree() != h.degree()) throw std::invalid_argument("permutation degree mismatch");
    std::vector<int> v(h.img_.size());
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = g.img_[static_cast<std::size_t>(h.img_[x])];
    Permutation p;
    p.img_ = std::move(v);
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p = *this;
    for (std::size_t x = 0; x < img_.size(); ++x) p.img_[static_cast<std::size_t>(img_[x])] = static_cast<int>(x);
    return p;
}

Permutation Permutation::pow(long m) const {
    Permutation base = m < 0 ? inverse() : *this;
    Permutation acc = identity(degree());
    for (long k = m < 0 ? -m : m; k > 0; --k) acc = acc * base;
    return acc;
}

bool Permutation::is_identity() const {
    for (std::size_t x = 0; x < img_.size(); ++x)
        if (img_[x] != static_cast<int>(x)) return false;
    return true;
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<int> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t x = 0; x < img_.size(); ++x) {
        if (seen[x]) continue;
        int len = 0;
        for (std::size_t y = x; !seen[y]; y = static_cast<std::size_t>(img_[y])) {
            seen[y] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int Permutation::order() const {
    long o = 1;
    for (int len : cycle_type()) o = std::lcm(o, static_cast<long>(len));
    return static_cast<int>(o);
}

bool Permutation::is_even() const {
    int transpositions = 0;
    for (int len : cycle_type()) transpositions += len - 1;
    return transpositions % 2 == 0;
}

std::string Permutation::to_string() const {
    std::string s = "(";
    std::vector<bool> seen(img_.size(), false);
    bool any = false;
    for (std::size_t x = 0; x < img_.size(); ++x) {
        if (seen[x] || img_[x] == static_cast<int>(x)) continue;
        if (any) s += ")(";
        any = true;
        bool first = true;
        for (std::size_t y = x; !seen[y]; y = static_cast<std::size_t>(img_[y])) {
            seen[y] = true;
            if (!first) s += ",";
            s += std::to_string(y + 1);
            first = false;
        }
    }
    return s + ")";
}

// ---- GroupData ----

int GroupData::element_index(const Permutation& g) const {
    auto it = index.find(g);
    if (it == index.end()) throw std::invalid_argument("permutation is not a group element: " + g.to_string());
    return it->second;
}

int GroupData::class_of(const Permutation& g) const {
    const auto type = g.cycle_type();
    std::vector<int> candidates;
    for (int c = 0; c < num_classes(); ++c)
        if (class_representatives[static_cast<std::size_t>(c)].cycle_type() == type) candidates.push_back(c);
    if (candidates.empty()) throw std::invalid_argument("no class with this cycle type");
    if (candidates.size() == 1) return candidates.front();
    for (int c : candidates) {
        const auto& r = class_representatives[static_cast<std::size_t>(c)];
        for (const auto& h : elements)
            if (h * r * h.inverse() == g) return c;
    }
    throw std::invalid_argument("element not conjugate to any representative: " + g.to_string());
}

int GroupData::inverse_class(int c) const { return power_map[static_cast<std::size_t>(c)][static_cast<std::size_t>(exponent() - 1)]; }

void GroupData::finalize() {
    if (generators.empty()) throw std::invalid_argument("group without generators");
    const int n = generators.front().degree();
    elements.clear();
    words.clear();
    index.clear();
    elements.push_back(Permutation::identity(n));
    words.emplace_back();
    index.emplace(elements.back(), 0);
    for (std::size_t q = 0; q < elements.size(); ++q) {
        for (std::size_t s = 0; s < generators.size(); ++s) {
            Permutation h = elements[q] * generators[s];
            if (index.count(h)) continue;
            auto w = words[q];
            w.push_back(static_cast<int>(s));
            index.emplace(h, static_cast<int>(elements.size()));
            elements.push_back(std::move(h));
            words.push_back(std::move(w));
        }
    }
    element_class.clear();
    std::vector<long> counts(class_sizes.size(), 0);
    for (const auto& g : elements) {
        int c = class_of(g);
        element_class.push_back(c);
        ++counts[static_cast<std::size_t>(c)];
    }
    if (counts != class_sizes) throw std::invalid_argument("class sizes disagree with the enumerated group");
    for (std::size_t c = 0; c < class_sizes.size(); ++c)
        for (std::size_t m = 0; m < power_map[c].size(); ++m)
            if (class_of(class_representatives[c].pow(static_cast<long>(m))) != power_map[c][m])
                throw std::invalid_argument("power map disagrees at class " + std::to_string(c));
}

// ---- Characters ----

long Character::dimension() const {
    const Scalar& x = v_.at(0);
    if (!x.is_rational() || x.rational_part().get_den() != 1) throw std::domain_error("non-integral degree");
    return x.rational_part().get_num().get_si();
}

Character operator*(const Character& a, const Character& b) {
    std::vector<Scalar> v;
    for (std::size_t c = 0; c < a.size(); ++c) v.push_back(a[c] * b[c]);
    return Character(std::move(v));
}

Character operator+(const Character& a, const Character& b) {
    std::vector<Scalar> v;
    for (std::size_t c = 0; c < a.size(); ++c) v.push_back(a[c] + b[c]);
    return Character(std::move(v));
}

Character operator-(const Character& a, const Character& b) {
    std::vector<Scalar> v;
    for (std::size_t c = 0; c < a.size(); ++c) v.push_back(a[c] - b[c]);
    return Character(std::move(v));
}

Character operator*(long k, const Character& a) {
    std::vector<Scalar> v;
    for (const auto& x : a.values()) v.push_back(Scalar(k) * x);
    return Character(std::move(v));
}

Character trivial_character(const GroupData& g) {
    return Character(std::vector<Scalar>(static_cast<std::size_t>(g.num_classes()), Scalar(1)));
}

Character galois_conjugate(const Character& c) {
    std::vector<Scalar> v;
    for (const auto& x : c.values()) v.push_back(x.conjugate());
    return Character(std::move(v));
}

Rational inner_product(const GroupData& g, const Character& chi, const Character& psi) {
    Scalar s;
    for (int c = 0; c < g.num_classes(); ++c) {
        Scalar t = chi[static_cast<std::size_t>(c)] * psi[static_cast<std::size_t>(g.inverse_class(c))];
        s += Scalar(g.class_sizes[static_cast<std::size_t>(c)]) * t;
    }
    if (!s.is_rational()) throw std::domain_error("inner product is irrational");
    return s.rational_part() / g.order();
}

Character exterior_power_character(const GroupData& g, const Character& chi, int m) {
    const std::size_t nc = static_cast<std::size_t>(g.num_classes());
    if (m < 0) throw std::invalid_argument("negative exterior power");
    std::vector<Character> e{trivial_character(g)};
    auto power_sum = [&](int j) {
        std::vector<Scalar> v;
        for (std::size_t c = 0; c < nc; ++c) v.push_back(chi[static_cast<std::size_t>(g.power_map[c][static_cast<std::size_t>(j % g.exponent())])]);
        return Character(std::move(v));
    };
    for (int k = 1; k <= m; ++k) {
        Character acc{std::vector<Scalar>(nc)};
        for (int j = 1; j <= k; ++j) {
            Character term = e[static_cast<std::size_t>(k - j)] * power_sum(j);
            acc = (j % 2 == 1) ? acc + term : acc - term;
        }
        std::vector<Scalar> v;
        for (const auto& x : acc.values()) v.push_back(x / Scalar(k));
        e.emplace_back(std::move(v));
    }
    return e[static_cast<std::size_t>(m)];
}

Multiplicities decompose(const GroupData& g, const std::vector<Character>& irreducibles, const Character& chi) {
    Multiplicities m{};
    Character rebuilt{std::vector<Scalar>(chi.size())};
    for (std::size_t i = 0; i < irreducibles.size(); ++i) {
        Rational q = inner_product(g, chi, irreducibles[i]);
        if (q.get_den() != 1 || q < 0)
            throw NotACharacter("multiplicity of " + std::string(irrep_label(static_cast<int>(i))) + " is " + q.get_str());
        m[i] = q.get_num().get_si();
        rebuilt = rebuilt + m[i] * irreducibles[i];
    }
    if (!(rebuilt == chi)) throw NotACharacter("class function is not spanned by the irreducibles");
    return m;
}

// ---- Irrep models ----

std::vector<FieldMatrix> element_matrices(const GroupData& g, const std::vector<FieldMatrix>& gens) {
    std::vector<FieldMatrix> out;
    out.reserve(g.elements.size());
    out.push_back(FieldMatrix::identity(gens.front().rows()));
    for (std::size_t i = 1; i < g.elements.size(); ++i) {
        const auto& w = g.words[i];
        auto parent = g.index.at(g.elements[i] * g.generators[static_cast<std::size_t>(w.back())].inverse());
        out.push_back(out[static_cast<std::size_t>(parent)] * gens[static_cast<std::size_t>(w.back())]);
    }
    return out;
}

FieldMatrix element_matrix(const GroupData& g, const std::vector<FieldMatrix>& gens, int element) {
    FieldMatrix m = FieldMatrix::identity(gens.front().rows());
    for (int s : g.words[static_cast<std::size_t>(element)]) m = m * gens[static_cast<std::size_t>(s)];
    return m;
}

std::optional<std::string> verify_irrep(const GroupData& g, const IrrepModel& model, const Character& chi) {
    const std::string who = model.label + ": ";
    if (model.generator_matrices.size() != g.generators.size()) return who + "wrong number of generator matrices";
    for (const auto& m : model.generator_matrices)
        if (m.rows() != static_cast<std::size_t>(model.dimension) || m.cols() != m.rows())
            return who + "generator matrix has wrong shape";
    const std::size_t d = static_cast<std::size_t>(model.dimension);
    for (const auto& rel : g.relations) {
        FieldMatrix m = FieldMatrix::identity(d);
        for (int s : rel.word) m = m * model.generator_matrices[static_cast<std::size_t>(s)];
        if (!m.is_identity()) return who + "relation " + rel.name + " violated";
    }
    auto mats = element_matrices(g, model.generator_matrices);
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        for (std::size_t s = 0; s < g.generators.size(); ++s) {
            int j = g.element_index(g.elements[i] * g.generators[s]);
            if (!(mats[i] * model.generator_matrices[s] == mats[static_cast<std::size_t>(j)]))
                return who + "Cayley graph not closed at " + g.elements[i].to_string() + " * " + g.generator_names[s];
        }
    }
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        int c = g.element_class[i];
        if (!(mats[i].trace() == chi[static_cast<std::size_t>(c)]))
            return who + "trace disagrees with character on class " + g.class_names[static_cast<std::size_t>(c)];
    }
    return std::nullopt;
}

// ---- Fixture ----

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

int to_int(const std::string& s) {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw FixtureError("bad integer: " + s);
    return v;
}

}  // namespace

Fixture parse_fixture(const std::string& text) {
    Fixture fx;
    fx.digest = fnv1a_hex(text);
    fx.characters.resize(kNumIrreps);
    fx.irreps.resize(kNumIrreps);
    std::vector<bool> have_char(kNumIrreps, false), have_irrep(kNumIrreps, false);

    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        for (std::string line; std::getline(is, line);) {
            if (auto hash = line.find('#'); hash == 0) continue;
            if (split_ws(line).empty()) continue;
            lines.push_back(line);
        }
    }
    std::size_t pos = 0;
    auto next = [&]() -> std::vector<std::string> {
        if (pos >= lines.size()) throw FixtureError("unexpected end of fixture");
        return split_ws(lines[pos++]);
    };
    auto head = next();
    if (head.size() != 2 || head[0] != "bgg-forge-fixture" || head[1] != "1") throw FixtureError("unsupported fixture header");
    GroupData& g = fx.group;
    bool ended = false;
    try {
        while (pos < lines.size() && !ended) {
            auto t = next();
            const std::string& kw = t[0];
            if (kw == "group") {
                if (t.size() != 3) throw FixtureError("bad group line");
                g.name = t[1];
            } else if (kw == "generator") {
                std::vector<int> img;
                for (std::size_t i = 2; i < t.size(); ++i) img.push_back(to_int(t[i]));
                g.generator_names.push_back(t.at(1));
                g.generators.push_back(Permutation::from_one_based(img));
            } else if (kw == "relation") {
                if (t.size() < 4 || t[2] != "=") throw FixtureError("bad relation line");
                Relation r{t[1], {}};
                for (std::size_t i = 3; i < t.size(); ++i) {
                    auto it = std::find(g.generator_names.begin(), g.generator_names.end(), t[i]);
                    if (it == g.generator_names.end()) throw FixtureError("unknown generator in relation: " + t[i]);
                    r.word.push_back(static_cast<int>(it - g.generator_names.begin()));
                }
                g.relations.push_back(std::move(r));
            } else if (kw == "class") {
                // class i name size N rep <images> powers <indices>
                if (t.size() < 7 || t[3] != "size" || t[5] != "rep") throw FixtureError("bad class line");
                if (to_int(t[1]) != g.num_classes()) throw FixtureError("classes out of order");
                g.class_names.push_back(t[2]);
                g.class_sizes.push_back(to_int(t[4]));
                auto pw = std::find(t.begin(), t.end(), "powers");
                if (pw == t.end()) throw FixtureError("class line without powers");
                std::vector<int> img;
                for (auto it = t.begin() + 6; it != pw; ++it) img.push_back(to_int(*it));
                g.class_representatives.push_back(Permutation::from_one_based(img));
                std::vector<int> powers;
                for (auto it = pw + 1; it != t.end(); ++it) powers.push_back(to_int(*it));
                g.power_map.push_back(std::move(powers));
            } else if (kw == "character") {
                auto l = parse_irrep_label(t.at(1));
                if (!l) throw FixtureError("unknown character label " + t[1]);
                std::vector<Scalar> v;
                for (std::size_t i = 2; i < t.size(); ++i) v.push_back(Scalar::parse(t[i]));
                fx.characters[static_cast<std::size_t>(*l)] = Character(std::move(v));
                have_char[static_cast<std::size_t>(*l)] = true;
            } else if (kw == "irrep") {
                auto l = parse_irrep_label(t.at(1));
                if (!l || t.size() != 4 || t[2] != "dim") throw FixtureError("bad irrep line");
                IrrepModel m{t[1], to_int(t[3]), {}};
                const std::size_t d = static_cast<std::size_t>(m.dimension);
                for (std::size_t s = 0; s < g.generators.size(); ++s) {
                    auto mh = next();
                    if (mh.size() != 2 || mh[0] != "matrix" || mh[1] != g.generator_names[s])
                        throw FixtureError("expected matrix " + g.generator_names[s] + " for " + m.label);
                    FieldMatrix mat(d, d);
                    for (std::size_t r = 0; r < d; ++r) {
                        auto row = next();
                        if (row.size() != d) throw FixtureError("matrix row of wrong length in " + m.label);
                        for (std::size_t c = 0; c < d; ++c) mat(r, c) = Scalar::parse(row[c]);
                    }
                    m.generator_matrices.push_back(std::move(mat));
                }
                fx.irreps[static_cast<std::size_t>(*l)] = std::move(m);
                have_irrep[static_cast<std::size_t>(*l)] = true;
            } else if (kw == "end") {
                ended = true;
            } else {
                throw FixtureError("unknown fixture keyword: " + kw);
            }
        }
    } catch (const std::invalid_argument& e) {
        throw FixtureError(std::string("fixture parse error: ") + e.what());
    }
    if (!ended) throw FixtureError("fixture missing end marker");
    for (int l = 0; l < kNumIrreps; ++l)
        if (!have_char[static_cast<std::size_t>(l)] || !have_irrep[static_cast<std::size_t>(l)])
            throw FixtureError(std::string("fixture lacks ") + irrep_label(l));
    try {
        g.finalize();
    } catch (const std::exception& e) {
        throw FixtureError(std::string("group data inconsistent: ") + e.what());
    }
    long total = 0;
    for (auto s : g.class_sizes) total += s;
    if (total != g.order()) throw FixtureError("class sizes do not sum to the group order");
    for (const auto& gen : g.generators)
        if (!gen.is_even()) throw FixtureError("odd generator");
    for (int l = 0; l < kNumIrreps; ++l) {
        if (auto err = verify_irrep(g, fx.irreps[static_cast<std::size_t>(l)], fx.characters[static_cast<std::size_t>(l)]))
            throw FixtureError("verify_irrep failed: " + *err);
    }
    return fx;
}

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FixtureError("cannot open fixture " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str());
}

std::string default_fixture_path() { return BGGFORGE_FIXTURE_PATH; }

}  // namespace bggforge
