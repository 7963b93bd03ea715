// Copyright 2026 The tgm-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/fixture_gen.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace testsupport {

using nlohmann::json;
using tgmeval::corpus::DatasetDescriptor;
using tgmeval::corpus::DatasetFamily;
using tgmeval::corpus::DatasetFormat;

namespace {

enum class Klass { YesNo, Factoid, Range };

struct UniqueQuestion {
    std::string nl;
    std::string gold;
    std::string old_gold;  // differing gold in the oldest copy, when set
    Klass klass = Klass::Factoid;
};

std::string yes_no_gold(int i) {
    switch (i % 3) {
        case 0:
            return "ASK WHERE { res:Entity_" + std::to_string(i) +
                   " onto:relatedTo res:Entity_" + std::to_string(i + 1) +
                   " }";
        case 1:
            return "ASK WHERE { res:Entity_" + std::to_string(i) +
                   " rdf:type onto:City }";
        default:
            return "PREFIX dbo: <http://dbpedia.org/ontology/> ASK WHERE { "
                   "res:Entity_" +
                   std::to_string(i) + " dbo:verifies ?x }";
    }
}

std::string factoid_gold(int i) {
    std::string n = std::to_string(i);
    switch (i % 9) {
        case 0:
            return "SELECT ?uri WHERE { ?uri rdf:type onto:Class" +
                   std::to_string(i % 7) + " . ?uri onto:relatedTo res:Entity_" +
                   n + " }";
        case 1:
            return "SELECT DISTINCT ?x ?l WHERE { ?x prop:field" +
                   std::to_string(i % 5) +
                   " ?l . OPTIONAL { ?x rdfs:label ?name } }";
        case 2:
            return "SELECT ?x WHERE { { ?x onto:first res:Entity_" + n +
                   " } UNION { ?x onto:second res:Entity_" + n + " } }";
        case 3:
            return "SELECT ?p WHERE { ?p rdf:type foaf:Person . ?p "
                   "onto:birthYear ?y . FILTER(?y > 19" +
                   std::to_string(10 + i % 90) + ") }";
        case 4:
            // vendor-extended: bare aggregate projection
            return "SELECT COUNT(?u) WHERE { ?u rdf:type onto:Class" +
                   std::to_string(i % 7) + " . ?u onto:relatedTo res:Entity_" +
                   n + " }";
        case 5:
            return "SELECT (COUNT(?x) AS ?cnt) WHERE { ?x onto:memberOf "
                   "res:Entity_" +
                   n + " }";
        case 6:
            return "SELECT ?x WHERE { ?x rdfs:label \"Name " + n +
                   "\"@en }";
        case 7:
            return "PREFIX ex: <http://example.org/> SELECT ?s WHERE { ?s "
                   "ex:code \"" +
                   n + "\"^^xsd:integer }";
        default:
            return "SELECT ?x ?y WHERE { ?x onto:partner ?y ; onto:year ?w . "
                   "FILTER(?w >= " +
                   std::to_string(1900 + i % 100) + ") }";
    }
}

std::string range_gold(int i) {
    std::string n = std::to_string(i % 11);
    switch (i % 5) {
        case 0:
            return "SELECT ?x WHERE { ?x rdf:type onto:Mountain ; "
                   "onto:elevation ?e . ?x onto:region res:Region_" +
                   n + " } ORDER BY DESC(?e) LIMIT 1";
        case 1:
            return "SELECT ?x WHERE { ?x rdf:type onto:Mountain ; "
                   "onto:elevation ?e . ?x onto:region res:Region_" +
                   n + " } ORDER BY DESC(?e) LIMIT 1 OFFSET 1";
        case 2:
            return "SELECT DISTINCT ?p WHERE { ?p onto:award res:Prize_" + n +
                   " ; onto:age ?a } ORDER BY ?a LIMIT 4";
        case 3:
            // vendor-extended: aggregate inside ORDER BY
            return "SELECT DISTINCT ?u WHERE { ?u onto:playsFor ?team . "
                   "?team onto:league res:League_" +
                   n + " } ORDER BY DESC(COUNT(?u)) LIMIT 1";
        default:
            return "SELECT ?x WHERE { ?x onto:rank ?r . ?x onto:group "
                   "res:Group_" +
                   n + " } ORDER BY ?r OFFSET 2";
    }
}

std::string nl_for(Klass klass, int i) {
    std::string n = std::to_string(i);
    switch (klass) {
        case Klass::YesNo:
            return "Is benchmark item " + n + " related to item " +
                   std::to_string(i + 1) + "?";
        case Klass::Range:
            return "What is the top ranked subject of list " + n + "?";
        default:
            return "Which resources are associated with benchmark item " + n +
                   "?";
    }
}

// Gold rework applied by "newer editions" for some duplicated questions:
// same class, renamed variables.
std::string variable_renamed(const std::string& gold) {
    std::string out;
    out.reserve(gold.size() + 8);
    for (std::size_t i = 0; i < gold.size(); ++i) {
        out += gold[i];
        if (gold[i] == '?' && i + 1 < gold.size() &&
            (std::isalpha(static_cast<unsigned char>(gold[i + 1])) ||
             gold[i + 1] == '_')) {
            out += "w_";
        }
    }
    return out;
}

// Typographic variation that must fold to the same dedup key.
std::string nl_variant(const std::string& nl, int salt) {
    switch (salt % 4) {
        case 0:
            return nl;
        case 1: {
            std::string lower;
            for (char c : nl)
                lower += static_cast<char>(
                    std::tolower(static_cast<unsigned char>(c)));
            return lower;
        }
        case 2: {
            std::string s = nl;
            if (!s.empty() && s.back() == '?') s.pop_back();
            return s + " ?";
        }
        default:
            return "  " + nl + "  ";
    }
}

// seeded Fisher-Yates; std::shuffle is not pinned across library versions
template <typename T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = rng() % i;
        std::swap(values[i - 1], values[j]);
    }
}

std::vector<UniqueQuestion> build_pool(std::size_t total, std::size_t yes_no,
                                       std::size_t range, unsigned seed) {
    std::vector<Klass> klasses;
    klasses.reserve(total);
    for (std::size_t i = 0; i < yes_no; ++i) klasses.push_back(Klass::YesNo);
    for (std::size_t i = 0; i < range; ++i) klasses.push_back(Klass::Range);
    while (klasses.size() < total) klasses.push_back(Klass::Factoid);
    std::mt19937 rng(seed);
    deterministic_shuffle(klasses, rng);

    std::vector<UniqueQuestion> pool;
    pool.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        UniqueQuestion q;
        q.klass = klasses[i];
        int idx = static_cast<int>(i);
        q.nl = nl_for(q.klass, idx);
        switch (q.klass) {
            case Klass::YesNo: q.gold = yes_no_gold(idx); break;
            case Klass::Range: q.gold = range_gold(idx); break;
            default: q.gold = factoid_gold(idx); break;
        }
        pool.push_back(std::move(q));
    }
    return pool;
}

struct FilePlan {
    std::string name;
    int order_index;
    std::size_t size;
    std::size_t fresh;
};

struct Slot {
    std::size_t unique_index;
    bool first_placement;
};

json qald_question_json(const std::string& id, const std::string& nl,
                        const std::string& gold, bool with_german) {
    json langs = json::array();
    langs.push_back({{"language", "en"}, {"string", nl}});
    if (with_german)
        langs.push_back(
            {{"language", "de"}, {"string", "Frage (de): " + nl}});
    json q;
    q["id"] = id;
    q["question"] = std::move(langs);
    q["query"] = {{"sparql", gold}};
    return q;
}

}  // namespace

GeneratedFamily generate_qald(const std::filesystem::path& dir) {
    // the usable challenge datasets with their published sizes
    const std::vector<FilePlan> plans = {
        {"qald-1/dbpedia", 1, 100, 100},
        {"qald-1/musicbrainz", 1, 100, 100},
        {"qald-2/dbpedia", 2, 200, 110},
        {"qald-2/musicbrainz", 2, 200, 110},
        {"qald-2/participants-challenge", 2, 7, 7},
        {"qald-3/esdbpedia", 3, 100, 100},
        {"qald-3/dbpedia", 3, 199, 60},
        {"qald-3/musicbrainz", 3, 199, 60},
        {"qald-4/multilingual", 4, 250, 80},
        {"qald-4/biomedical", 4, 50, 50},
        {"qald-5/multilingual", 5, 350, 90},
        {"qald-6/multilingual", 6, 450, 80},
        {"qald-7/multilingual", 7, 314, 24},
        {"qald-7/largescale-train", 7, 100, 20},
        {"qald-7/en-wikidata", 7, 150, 20},
    };

    constexpr std::size_t kTotal = 1011, kYesNo = 85, kRange = 65;
    std::vector<UniqueQuestion> pool = build_pool(kTotal, kYesNo, kRange,
                                                  /*seed=*/20180131);

    // Duplicated questions whose oldest copy carries a differing gold query;
    // the evaluator must keep the newer one.
    std::vector<std::size_t> reworked;

    std::mt19937 rng(42);
    std::vector<std::vector<Slot>> file_slots(plans.size());
    std::size_t next_fresh = 0;
    std::size_t placed_before_edition = 0;  // uniques placed in lower editions
    int current_edition = 1;
    std::size_t placed_running = 0;
    std::size_t raw_entries = 0;

    for (std::size_t f = 0; f < plans.size(); ++f) {
        const FilePlan& plan = plans[f];
        if (plan.order_index != current_edition) {
            placed_before_edition = placed_running;
            current_edition = plan.order_index;
        }
        std::vector<Slot> slots;
        for (std::size_t i = 0; i < plan.fresh; ++i)
            slots.push_back(Slot{next_fresh++, true});
        placed_running += plan.fresh;

        std::size_t dup_count = plan.size - plan.fresh;
        if (dup_count > 0) {
            if (placed_before_edition == 0)
                throw std::logic_error("fixture plan: duplicates before any "
                                       "earlier edition");
            std::vector<std::size_t> candidates(placed_before_edition);
            for (std::size_t i = 0; i < candidates.size(); ++i)
                candidates[i] = i;
            deterministic_shuffle(candidates, rng);
            for (std::size_t i = 0; i < dup_count; ++i) {
                std::size_t unique_index = candidates[i % candidates.size()];
                slots.push_back(Slot{unique_index, false});
                if (i % 7 == 0) reworked.push_back(unique_index);
            }
        }
        raw_entries += slots.size();
        file_slots[f] = std::move(slots);
    }
    if (next_fresh != kTotal)
        throw std::logic_error("fixture plan does not place every question");

    // a reworked question's first copy keeps the old gold
    std::vector<DedupProbe> probes;
    for (std::size_t idx : reworked) {
        if (!pool[idx].old_gold.empty()) continue;
        pool[idx].old_gold = variable_renamed(pool[idx].gold);
        if (probes.size() < 8)
            probes.push_back(
                DedupProbe{pool[idx].nl, pool[idx].gold, pool[idx].old_gold});
    }

    GeneratedFamily family;
    family.expected =
        ExpectedStats{kTotal, kYesNo, kTotal - kYesNo, kRange, raw_entries};
    family.probes = std::move(probes);

    int variant_salt = 0;
    for (std::size_t f = 0; f < plans.size(); ++f) {
        const FilePlan& plan = plans[f];
        json questions = json::array();
        int local_id = 0;
        for (const Slot& slot : file_slots[f]) {
            const UniqueQuestion& q = pool[slot.unique_index];
            std::string gold = q.gold;
            std::string nl = q.nl;
            if (!slot.first_placement) {
                nl = nl_variant(nl, variant_salt++);
            } else if (!q.old_gold.empty()) {
                gold = q.old_gold;  // oldest copy of a reworked question
            }
            bool with_german = plan.name.find("multilingual") !=
                                   std::string::npos &&
                               local_id % 5 == 0;
            questions.push_back(qald_question_json(std::to_string(++local_id),
                                                   nl, gold, with_german));
        }
        std::string file_name = plan.name;
        for (char& c : file_name)
            if (c == '/') c = '_';
        std::filesystem::path path = dir / (file_name + ".json");
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write fixture: " + path.string());
        out << json{{"questions", std::move(questions)}}.dump(1) << '\n';

        DatasetDescriptor d;
        d.name = plan.name;
        d.family = DatasetFamily::Qald;
        d.order_index = plan.order_index;
        d.path = path;
        d.format = DatasetFormat::QaldJson;
        family.descriptors.push_back(std::move(d));
    }
    return family;
}

GeneratedFamily generate_lcquad(const std::filesystem::path& dir) {
    constexpr std::size_t kUnique = 4977, kYesNo = 368, kDuplicates = 23;
    std::vector<UniqueQuestion> pool =
        build_pool(kUnique, kYesNo, /*range=*/0, /*seed=*/20171204);

    // LC-QuAD-flavored golds: full IRIs, occasional bare COUNT
    for (std::size_t i = 0; i < pool.size(); ++i) {
        std::string n = std::to_string(i);
        if (pool[i].klass == Klass::YesNo) {
            pool[i].gold = "ASK WHERE { <http://dbpedia.org/resource/Item_" +
                           n + "> <http://dbpedia.org/property/link" +
                           std::to_string(i % 17) +
                           "> <http://dbpedia.org/resource/Item_" +
                           std::to_string(i + 1) + "> }";
        } else if (i % 13 == 3) {
            pool[i].gold =
                "SELECT DISTINCT COUNT(?uri) WHERE { ?uri "
                "<http://dbpedia.org/property/link" +
                std::to_string(i % 17) +
                "> <http://dbpedia.org/resource/Item_" + n + "> }";
        } else {
            pool[i].gold =
                "SELECT DISTINCT ?uri WHERE { ?uri "
                "<http://dbpedia.org/ontology/edge" +
                std::to_string(i % 23) +
                "> <http://dbpedia.org/resource/Item_" + n +
                "> . ?uri <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
                "<http://dbpedia.org/ontology/Kind" +
                std::to_string(i % 11) + "> }";
        }
        pool[i].nl = (pool[i].klass == Klass::YesNo
                          ? "Does dataset item " + n + " link to item " +
                                std::to_string(i + 1) + "?"
                          : "What connects to dataset item " + n + "?");
    }

    json items = json::array();
    std::size_t id = 0;
    for (const UniqueQuestion& q : pool) {
        items.push_back({{"_id", "lcq" + std::to_string(++id)},
                         {"corrected_question", q.nl},
                         {"sparql_query", q.gold}});
    }
    // duplicate copies of factoid questions, mild typographic variation
    std::size_t added = 0;
    for (std::size_t i = 0; added < kDuplicates; i += 211) {
        const UniqueQuestion& q = pool[i % pool.size()];
        if (q.klass != Klass::Factoid) {
            ++i;
            continue;
        }
        items.push_back({{"_id", "lcq" + std::to_string(++id)},
                         {"corrected_question",
                          nl_variant(q.nl, static_cast<int>(added) + 1)},
                         {"sparql_query", q.gold}});
        ++added;
    }

    std::filesystem::path path = dir / "lcquad.json";
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write fixture: " + path.string());
    out << items.dump(1) << '\n';

    GeneratedFamily family;
    DatasetDescriptor d;
    d.name = "lc-quad/train";
    d.family = DatasetFamily::LcQuad;
    d.order_index = 1;
    d.path = path;
    d.format = DatasetFormat::LcQuadJson;
    family.descriptors.push_back(std::move(d));
    family.expected = ExpectedStats{kUnique, kYesNo, kUnique - kYesNo, 0,
                                    kUnique + kDuplicates};
    return family;
}

}  // namespace testsupport
