#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "incrsa/errors.hpp"
#include "incrsa/tuna.hpp"

namespace incrsa::tuna {

namespace {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

// Document-order depth-first search for elements named `name`.
void find_all(const ptree& tree, const std::string& name,
              std::vector<const ptree*>& out) {
    for (const auto& [key, child] : tree) {
        if (key == "<xmlattr>" || key == "<xmltext>") continue;
        if (key == name) out.push_back(&child);
        find_all(child, name, out);
    }
}

const ptree* find_first(const ptree& tree, const std::string& name) {
    std::vector<const ptree*> found;
    find_all(tree, name, found);
    return found.empty() ? nullptr : found.front();
}

std::string attr(const ptree& element, const std::string& name) {
    return element.get<std::string>("<xmlattr>." + name, "");
}

// ATTRIBUTE children of `scope`, rendered as name:value tokens in document
// order. Attributes without both NAME and VALUE are skipped (the annotated
// word-string layout wraps plain text in ATTRIBUTE tags too).
std::vector<std::string> attribute_tokens(const ptree& scope) {
    std::vector<const ptree*> nodes;
    find_all(scope, "ATTRIBUTE", nodes);
    std::vector<std::string> tokens;
    for (const ptree* node : nodes) {
        std::string name = attr(*node, "NAME");
        std::string value = attr(*node, "VALUE");
        if (!name.empty() && !value.empty()) {
            tokens.push_back(attribute_word(name, value));
        }
    }
    return tokens;
}

struct TrialParse {
    bool skipped_domain = false;
    bool multi_target = false;
    Trial trial;
};

TrialParse parse_trial_file(const fs::path& path, const std::string& domain) {
    ptree doc;
    boost::property_tree::read_xml(path.string(), doc,
                                   boost::property_tree::xml_parser::trim_whitespace);
    const ptree* trial_node = find_first(doc, "TRIAL");
    if (!trial_node) {
        throw ParseError("no TRIAL element");
    }
    TrialParse parsed;
    std::string trial_domain = attr(*trial_node, "DOMAIN");
    if (!trial_domain.empty() && trial_domain != domain) {
        parsed.skipped_domain = true;
        return parsed;
    }
    Trial& trial = parsed.trial;
    trial.domain = domain;
    trial.id = attr(*trial_node, "ID");
    if (trial.id.empty()) trial.id = path.stem().string();

    std::vector<const ptree*> entity_nodes;
    find_all(*trial_node, "ENTITY", entity_nodes);
    if (entity_nodes.empty()) {
        throw ParseError("no ENTITY elements");
    }
    int targets = 0;
    for (const ptree* node : entity_nodes) {
        Entity entity;
        entity.id = attr(*node, "ID");
        entity.is_target = attr(*node, "TYPE") == "target";
        targets += entity.is_target ? 1 : 0;
        std::vector<const ptree*> attributes;
        find_all(*node, "ATTRIBUTE", attributes);
        for (const ptree* a : attributes) {
            std::string name = attr(*a, "NAME");
            std::string value = attr(*a, "VALUE");
            if (!name.empty()) {
                entity.attributes[sanitize_token(name)] = sanitize_token(value);
            }
        }
        if (entity.id.empty()) {
            throw ParseError("ENTITY without ID");
        }
        trial.entities.push_back(std::move(entity));
    }
    if (targets == 0) {
        throw ParseError("no target entity");
    }
    if (targets > 1) {
        parsed.multi_target = true;
        return parsed;
    }

    // Attested description: the ATTRIBUTE-SET when present, otherwise the
    // attribute-annotated DESCRIPTION element.
    const ptree* attribute_set = find_first(*trial_node, "ATTRIBUTE-SET");
    if (attribute_set) {
        trial.description = attribute_tokens(*attribute_set);
    } else if (const ptree* description = find_first(*trial_node, "DESCRIPTION")) {
        trial.description = attribute_tokens(*description);
    }
    if (trial.description.empty()) {
        throw ParseError("no attested description attributes");
    }
    return parsed;
}

}  // namespace

CorpusLoad parse_corpus(const std::string& root, const std::string& domain) {
    fs::path base(root);
    if (!fs::exists(base)) {
        throw ParseError("corpus path does not exist: " + root);
    }
    std::vector<fs::path> files;
    if (fs::is_regular_file(base)) {
        files.push_back(base);
    } else {
        for (const auto& entry : fs::recursive_directory_iterator(base)) {
            if (entry.is_regular_file() && entry.path().extension() == ".xml") {
                files.push_back(entry.path());
            }
        }
    }
    std::sort(files.begin(), files.end());

    CorpusLoad load;
    for (const fs::path& path : files) {
        try {
            TrialParse parsed = parse_trial_file(path, domain);
            if (parsed.skipped_domain) continue;
            if (parsed.multi_target) {
                load.dropped_multi_target += 1;
                continue;
            }
            load.trials.push_back(std::move(parsed.trial));
        } catch (const std::exception& e) {
            load.file_errors.push_back(path.string() + ": " + e.what());
        }
    }
    std::stable_sort(load.trials.begin(), load.trials.end(),
                     [](const Trial& a, const Trial& b) { return a.id < b.id; });
    if (load.trials.empty()) {
        throw ParseError("corpus yielded no usable " + domain + " trial under " + root);
    }
    return load;
}

}  // namespace incrsa::tuna
