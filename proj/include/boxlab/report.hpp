#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace boxlab {

// Plain-text report with a stable `key: value` line grammar, emitted in
// insertion order.  Keys are lowercase words joined by underscores or dots;
// values are rendered by the caller.  This is the only stdout format the
// command-line tools use, so outputs stay diff-friendly and greppable.
class RunReport {
public:
    void add(const std::string& key, const std::string& value) {
        rows_.emplace_back(key, value);
    }
    void add(const std::string& key, long long value) {
        add(key, std::to_string(value));
    }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "yes" : "no")); }
    void add(const std::string& key, double value) {
        std::ostringstream s;
        s << value;
        add(key, s.str());
    }

    void print(std::ostream& out) const {
        for (const auto& [key, value] : rows_) out << key << ": " << value << "\n";
    }

    std::string str() const {
        std::ostringstream out;
        print(out);
        return out.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

}  // namespace boxlab
