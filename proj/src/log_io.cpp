#include "privlog/log_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "privlog/errors.hpp"

namespace privlog {

LogFormat format_from_name(std::string_view name) {
  if (name == "xes") return LogFormat::xes;
  if (name == "csv") return LogFormat::csv;
  throw ConfigError("unknown log format '" + std::string(name) +
                    "' (expected xes or csv)");
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("error while writing '" + path + "'");
}

void sort_trace_events(EventLog& log) {
  for (auto& trace : log.traces)
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const Event& a, const Event& b) {
                       return a.timestamp < b.timestamp;
                     });
}

std::string format_epsilon(double eps) {
  if (std::isinf(eps)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", eps);
  return buf;
}

// ---- CSV ------------------------------------------------------------------

// RFC-4180 style field splitting with quote support.
std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty())
        throw ParseError("csv line " + std::to_string(line_no) +
                         ": quote inside unquoted field");
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted)
    throw ParseError("csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

EventLog parse_csv(std::string_view text, const CsvColumns& columns) {
  EventLog log;
  std::map<std::string, std::size_t> trace_by_id;

  std::size_t pos = 0;
  int line_no = 0;
  int case_col = -1, act_col = -1, ts_col = -1;
  std::size_t n_header = 0;
  while (pos <= text.size() && pos != std::string_view::npos && pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    std::string line(text.substr(pos, end == std::string_view::npos
                                          ? std::string_view::npos
                                          : end - pos));
    pos = end == std::string_view::npos ? text.size() : end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line, line_no);
    if (case_col < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == columns.case_id) case_col = static_cast<int>(i);
        if (fields[i] == columns.activity) act_col = static_cast<int>(i);
        if (fields[i] == columns.timestamp) ts_col = static_cast<int>(i);
      }
      if (case_col < 0 || act_col < 0 || ts_col < 0)
        throw ParseError("csv header (line " + std::to_string(line_no) +
                         ") lacks required columns '" + columns.case_id + "', '" +
                         columns.activity + "', '" + columns.timestamp + "'");
      n_header = fields.size();
      continue;
    }
    if (fields.size() < n_header)
      throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                       std::to_string(n_header) + " fields, got " +
                       std::to_string(fields.size()));
    const std::string& case_id = fields[case_col];
    const std::string& activity = fields[act_col];
    if (case_id.empty())
      throw ParseError("csv line " + std::to_string(line_no) + ": empty case id");
    if (activity.empty())
      throw ParseError("csv line " + std::to_string(line_no) + ": empty activity");
    Seconds ts;
    try {
      ts = parse_timestamp(fields[ts_col]);
    } catch (const ParseError& e) {
      throw ParseError("csv line " + std::to_string(line_no) + ": " + e.what());
    }
    auto [it, fresh] = trace_by_id.emplace(case_id, log.traces.size());
    if (fresh) log.traces.push_back({case_id, {}});
    log.traces[it->second].events.push_back({activity, ts});
  }
  if (case_col < 0) throw ParseError("csv input is empty (no header)");
  sort_trace_events(log);
  return log;
}

std::string write_csv(const EventLog& log, const EpsilonAnnotations* epsilons) {
  // Rows go out in global timestamp order (stable across traces), the
  // shape released logs are published in.
  struct Row {
    Seconds ts;
    std::size_t trace;
    std::size_t event;
  };
  std::vector<Row> rows;
  for (std::size_t t = 0; t < log.traces.size(); ++t)
    for (std::size_t e = 0; e < log.traces[t].events.size(); ++e)
      rows.push_back({log.traces[t].events[e].timestamp, t, e});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.ts < b.ts; });

  std::string out = "case_id,activity,timestamp";
  if (epsilons) out += ",epsilon_per_event,epsilon_per_trace";
  out += '\n';
  for (const Row& row : rows) {
    const Trace& trace = log.traces[row.trace];
    const Event& event = trace.events[row.event];
    out += csv_escape(trace.case_id);
    out += ',';
    out += csv_escape(event.activity);
    out += ',';
    out += format_timestamp(event.timestamp);
    if (epsilons) {
      out += ',';
      out += format_epsilon(epsilons->per_event[row.trace][row.event]);
      out += ',';
      out += format_epsilon(epsilons->per_trace[row.trace]);
    }
    out += '\n';
  }
  return out;
}

// ---- XES -------------------------------------------------------------------

struct XmlAttr {
  std::string name;
  std::string value;
};

struct XmlTag {
  enum Kind { open, close, self_closing, eof } kind = eof;
  std::string name;
  std::vector<XmlAttr> attrs;
  int line = 0;
};

class XmlScanner {
 public:
  explicit XmlScanner(std::string_view text) : text_(text) {}

  XmlTag next() {
    for (;;) {
      skip_until_tag();
      if (pos_ >= text_.size()) return {XmlTag::eof, "", {}, line_};
      if (starts_with("<?")) {
        skip_past("?>", "processing instruction");
        continue;
      }
      if (starts_with("<!--")) {
        skip_past("-->", "comment");
        continue;
      }
      if (starts_with("<![CDATA[")) {
        skip_past("]]>", "CDATA section");
        continue;
      }
      if (starts_with("<!")) {
        skip_past(">", "declaration");
        continue;
      }
      return read_tag();
    }
  }

 private:
  bool starts_with(std::string_view prefix) const {
    return text_.compare(pos_, prefix.size(), prefix) == 0;
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_)
      if (text_[pos_] == '\n') ++line_;
  }

  void skip_until_tag() {
    while (pos_ < text_.size() && text_[pos_] != '<') advance(1);
  }

  void skip_past(std::string_view terminator, const char* what) {
    std::size_t at = text_.find(terminator, pos_);
    if (at == std::string_view::npos)
      throw ParseError("xml line " + std::to_string(line_) + ": unterminated " +
                       std::string(what));
    advance(at + terminator.size() - pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      advance(1);
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' ||
           c == '-' || c == '.';
  }

  std::string read_name(const char* what) {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) advance(1);
    if (pos_ == begin)
      throw ParseError("xml line " + std::to_string(line_) + ": expected " +
                       std::string(what));
    return std::string(text_.substr(begin, pos_ - begin));
  }

  std::string decode_entities(std::string_view raw) {
    if (raw.find('&') == std::string_view::npos) return std::string(raw);
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      std::size_t semi = raw.find(';', i);
      if (semi == std::string_view::npos)
        throw ParseError("xml line " + std::to_string(line_) + ": bare '&'");
      std::string_view entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "amp")
        out += '&';
      else if (entity == "lt")
        out += '<';
      else if (entity == "gt")
        out += '>';
      else if (entity == "quot")
        out += '"';
      else if (entity == "apos")
        out += '\'';
      else if (!entity.empty() && entity[0] == '#') {
        long code = std::strtol(std::string(entity.substr(entity[1] == 'x' ? 2 : 1))
                                    .c_str(),
                                nullptr, entity[1] == 'x' ? 16 : 10);
        if (code <= 0 || code > 0x10FFFF)
          throw ParseError("xml line " + std::to_string(line_) +
                           ": bad character reference");
        // UTF-8 encode.
        unsigned cp = static_cast<unsigned>(code);
        if (cp < 0x80) {
          out += static_cast<char>(cp);
        } else if (cp < 0x800) {
          out += static_cast<char>(0xC0 | (cp >> 6));
          out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
          out += static_cast<char>(0xE0 | (cp >> 12));
          out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
          out += static_cast<char>(0xF0 | (cp >> 18));
          out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
          out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (cp & 0x3F));
        }
      } else {
        throw ParseError("xml line " + std::to_string(line_) +
                         ": unknown entity '&" + std::string(entity) + ";'");
      }
      i = semi;
    }
    return out;
  }

  XmlTag read_tag() {
    XmlTag tag;
    tag.line = line_;
    advance(1);  // '<'
    if (pos_ < text_.size() && text_[pos_] == '/') {
      advance(1);
      tag.kind = XmlTag::close;
      tag.name = read_name("element name");
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '>')
        throw ParseError("xml line " + std::to_string(tag.line) +
                         ": malformed closing tag </" + tag.name + ">");
      advance(1);
      return tag;
    }
    tag.kind = XmlTag::open;
    tag.name = read_name("element name");
    for (;;) {
      skip_space();
      if (pos_ >= text_.size())
        throw ParseError("xml line " + std::to_string(tag.line) +
                         ": unterminated tag <" + tag.name + ">");
      if (text_[pos_] == '>') {
        advance(1);
        return tag;
      }
      if (text_[pos_] == '/') {
        advance(1);
        if (pos_ >= text_.size() || text_[pos_] != '>')
          throw ParseError("xml line " + std::to_string(tag.line) +
                           ": malformed self-closing tag <" + tag.name + ">");
        advance(1);
        tag.kind = XmlTag::self_closing;
        return tag;
      }
      XmlAttr attr;
      attr.name = read_name("attribute name");
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '=')
        throw ParseError("xml line " + std::to_string(line_) +
                         ": attribute '" + attr.name + "' lacks '='");
      advance(1);
      skip_space();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\''))
        throw ParseError("xml line " + std::to_string(line_) +
                         ": attribute '" + attr.name + "' lacks a quoted value");
      char quote = text_[pos_];
      advance(1);
      std::size_t begin = pos_;
      while (pos_ < text_.size() && text_[pos_] != quote) advance(1);
      if (pos_ >= text_.size())
        throw ParseError("xml line " + std::to_string(line_) +
                         ": unterminated attribute value");
      attr.value = decode_entities(text_.substr(begin, pos_ - begin));
      advance(1);
      tag.attrs.push_back(std::move(attr));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

const std::string* attr_value(const XmlTag& tag, std::string_view name) {
  for (const auto& attr : tag.attrs)
    if (attr.name == name) return &attr.value;
  return nullptr;
}

EventLog parse_xes(std::string_view text) {
  XmlScanner scanner(text);
  EventLog log;
  std::vector<std::string> stack;

  bool saw_log = false;
  Trace trace;
  bool trace_named = false;
  int trace_line = 0;
  std::string activity;
  Seconds event_ts = 0;
  bool have_activity = false, have_ts = false;
  int event_line = 0;

  for (;;) {
    XmlTag tag = scanner.next();
    if (tag.kind == XmlTag::eof) break;

    if (tag.kind == XmlTag::close) {
      if (stack.empty() || stack.back() != tag.name)
        throw ParseError("xml line " + std::to_string(tag.line) +
                         ": unexpected closing tag </" + tag.name + ">");
      stack.pop_back();
      if (tag.name == "event") {
        if (!have_activity)
          throw ParseError("xes line " + std::to_string(event_line) +
                           ": event lacks concept:name");
        if (!have_ts)
          throw ParseError("xes line " + std::to_string(event_line) +
                           ": event lacks time:timestamp");
        trace.events.push_back({activity, event_ts});
      } else if (tag.name == "trace") {
        if (!trace_named)
          throw ParseError("xes line " + std::to_string(trace_line) +
                           ": trace lacks concept:name");
        if (trace.events.empty())
          throw ParseError("xes line " + std::to_string(trace_line) +
                           ": trace '" + trace.case_id + "' has no events");
        log.traces.push_back(std::move(trace));
        trace = Trace{};
        trace_named = false;
      }
      continue;
    }

    const std::string& parent = stack.empty() ? std::string{} : stack.back();
    bool in_trace_scope =
        std::find(stack.begin(), stack.end(), "trace") != stack.end();

    if (tag.name == "log") saw_log = true;

    if (tag.name == "trace" && parent == "log") {
      trace = Trace{};
      trace_named = false;
      trace_line = tag.line;
    } else if (tag.name == "event" && parent == "trace") {
      activity.clear();
      have_activity = have_ts = false;
      event_line = tag.line;
    } else if (parent == "trace" && in_trace_scope && tag.name == "string") {
      const std::string* key = attr_value(tag, "key");
      const std::string* value = attr_value(tag, "value");
      if (key && value && *key == "concept:name") {
        trace.case_id = *value;
        trace_named = true;
      }
    } else if (parent == "event" && in_trace_scope) {
      const std::string* key = attr_value(tag, "key");
      const std::string* value = attr_value(tag, "value");
      if (key && value && *key == "concept:name" && tag.name == "string") {
        activity = *value;
        have_activity = true;
      } else if (key && value && *key == "time:timestamp" && tag.name == "date") {
        try {
          event_ts = parse_timestamp(*value);
        } catch (const ParseError& e) {
          throw ParseError("xes line " + std::to_string(tag.line) + ": " + e.what());
        }
        have_ts = true;
      }
    }

    if (tag.kind == XmlTag::open) stack.push_back(tag.name);
  }

  if (!stack.empty())
    throw ParseError("xml: unclosed element <" + stack.back() + "> at end of input");
  if (!saw_log) throw ParseError("xes: no <log> element found");
  sort_trace_events(log);
  return log;
}

std::string xml_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string write_xes(const EventLog& log, const EpsilonAnnotations* epsilons) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<log xes.version=\"1.0\" xes.features=\"\">\n"
      "  <extension name=\"Concept\" prefix=\"concept\" "
      "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
      "  <extension name=\"Time\" prefix=\"time\" "
      "uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  for (std::size_t t = 0; t < log.traces.size(); ++t) {
    const Trace& trace = log.traces[t];
    out += "  <trace>\n";
    out += "    <string key=\"concept:name\" value=\"" + xml_escape(trace.case_id) +
           "\"/>\n";
    if (epsilons)
      out += "    <float key=\"epsilon_per_trace\" value=\"" +
             format_epsilon(epsilons->per_trace[t]) + "\"/>\n";
    for (std::size_t e = 0; e < trace.events.size(); ++e) {
      const Event& event = trace.events[e];
      out += "    <event>\n";
      out += "      <string key=\"concept:name\" value=\"" +
             xml_escape(event.activity) + "\"/>\n";
      out += "      <date key=\"time:timestamp\" value=\"" +
             format_timestamp_xes(event.timestamp) + "\"/>\n";
      if (epsilons)
        out += "      <float key=\"epsilon_per_event\" value=\"" +
               format_epsilon(epsilons->per_event[t][e]) + "\"/>\n";
      out += "    </event>\n";
    }
    out += "  </trace>\n";
  }
  out += "</log>\n";
  return out;
}

}  // namespace

EventLog parse_event_log_text(std::string_view text, LogFormat format,
                              const CsvColumns& columns) {
  EventLog log = format == LogFormat::csv ? parse_csv(text, columns)
                                          : parse_xes(text);
  validate(log);
  return log;
}

EventLog parse_event_log(const std::string& path, LogFormat format,
                         const CsvColumns& columns) {
  std::string text = read_file(path);
  try {
    return parse_event_log_text(text, format, columns);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string write_event_log_text(const EventLog& log, LogFormat format,
                                 const EpsilonAnnotations* epsilons) {
  return format == LogFormat::csv ? write_csv(log, epsilons)
                                  : write_xes(log, epsilons);
}

void write_event_log(const EventLog& log, const std::string& path,
                     LogFormat format, const EpsilonAnnotations* epsilons) {
  write_file(path, write_event_log_text(log, format, epsilons));
}

}  // namespace privlog
