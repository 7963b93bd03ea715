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

#include "tgmeval/sparql/prefix_env.hpp"

#include <cctype>
#include <stdexcept>

namespace tgmeval::sparql {

void PrefixEnv::declare(std::string label, std::string iri) {
    if (iri.empty()) throw std::invalid_argument("empty namespace IRI");
    for (char c : iri) {
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("whitespace in namespace IRI: " + iri);
    }
    for (auto& [l, v] : mappings_) {
        if (l == label) {
            v = std::move(iri);
            return;
        }
    }
    mappings_.emplace_back(std::move(label), std::move(iri));
}

std::optional<std::string> PrefixEnv::lookup(std::string_view label) const {
    for (const auto& [l, v] : mappings_) {
        if (l == label) return v;
    }
    return std::nullopt;
}

std::optional<std::string> PrefixEnv::resolve(std::string_view label) const {
    if (auto hit = lookup(label)) return hit;
    if (this != &default_env()) return default_env().lookup(label);
    return std::nullopt;
}

const PrefixEnv& PrefixEnv::default_env() {
    // The namespace table the parser is initialized with. "reds" is kept as
    // an accepted alias of the rdf-schema namespace alongside "rdfs".
    static const PrefixEnv env = [] {
        PrefixEnv e;
        e.declare("dc", "http://purl.org/dc/elements/1.1/");
        e.declare("foaf", "http://xmlns.com/foaf/0.1/");
        e.declare("obo", "http://purl.obolibrary.org/obo/");
        e.declare("onto", "http://dbpedia.org/ontology/");
        e.declare("owl", "http://www.w3.org/2002/07/owl#");
        e.declare("prop", "http://dbpedia.org/property/");
        e.declare("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
        e.declare("reds", "http://www.w3.org/2000/01/rdf-schema#");
        e.declare("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
        e.declare("res", "http://dbpedia.org/resource/");
        e.declare("xsd", "http://www.w3.org/2001/XMLSchema#");
        return e;
    }();
    return env;
}

}  // namespace tgmeval::sparql
