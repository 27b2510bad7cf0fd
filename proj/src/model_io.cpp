#include "pmbsi/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace pmbsi {

void save_model(const ModelFile& model, std::ostream& out) {
    out.precision(17);
    out << "version " << model.version << "\n";
    out << "ls " << model.params.ls << "\n";
    out << "lpr " << model.params.lpr << "\n";
    out << "eta1 " << model.params.eta1 << "\n";
    out << "eta2 " << model.params.eta2 << "\n";
    out << "q " << model.params.q << "\n";
    out << "offset " << model.offset << "\n";
    out << "seed " << model.seed << "\n";
    out << "ls_bounds " << model.bounds.ls_min << " " << model.bounds.ls_max << "\n";
    out << "eta1_bounds " << model.bounds.eta1_min << " " << model.bounds.eta1_max << "\n";
    out << "eta2_bounds " << model.bounds.eta2_min << " " << model.bounds.eta2_max << "\n";
    out << "q_bounds " << model.bounds.q_min << " " << model.bounds.q_max << "\n";
}

ModelFile load_model(std::istream& in) {
    ModelFile m;
    std::string key;
    std::map<std::string, bool> seen;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        if (!(ls >> key)) continue;
        seen[key] = true;
        if (key == "version") ls >> m.version;
        else if (key == "ls") ls >> m.params.ls;
        else if (key == "lpr") ls >> m.params.lpr;
        else if (key == "eta1") ls >> m.params.eta1;
        else if (key == "eta2") ls >> m.params.eta2;
        else if (key == "q") ls >> m.params.q;
        else if (key == "offset") ls >> m.offset;
        else if (key == "seed") ls >> m.seed;
        else if (key == "ls_bounds") ls >> m.bounds.ls_min >> m.bounds.ls_max;
        else if (key == "eta1_bounds") ls >> m.bounds.eta1_min >> m.bounds.eta1_max;
        else if (key == "eta2_bounds") ls >> m.bounds.eta2_min >> m.bounds.eta2_max;
        else if (key == "q_bounds") ls >> m.bounds.q_min >> m.bounds.q_max;
        if (ls.fail()) throw DataError("malformed model file near '" + key + "'");
    }
    for (const char* required : {"ls", "lpr", "eta1", "eta2", "q", "offset"})
        if (!seen.count(required))
            throw DataError(std::string("model file missing '") + required + "'");
    m.params.validate();
    return m;
}

void save_model_file(const ModelFile& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    save_model(model, out);
}

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read model file: " + path);
    return load_model(in);
}

} // namespace pmbsi
