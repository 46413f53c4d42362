#include "privlog/time_util.hpp"

#include <cctype>
#include <cstdio>

#include "privlog/errors.hpp"

namespace privlog {

std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day) {
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp + (mp < 10 ? 3 : -9);
  year = static_cast<int>(y + (month <= 2));
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }

  int digits(int count, const char* what) {
    int value = 0;
    for (int i = 0; i < count; ++i) {
      if (done() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError("bad timestamp '" + std::string(text) + "': expected " +
                         what);
      value = value * 10 + (text[pos++] - '0');
    }
    return value;
  }

  bool eat(char c) {
    if (!done() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

}  // namespace

Seconds parse_timestamp(std::string_view text) {
  Cursor cur{text};
  int year = cur.digits(4, "year");
  if (!cur.eat('-')) throw ParseError("bad timestamp '" + std::string(text) + "'");
  int month = cur.digits(2, "month");
  if (!cur.eat('-')) throw ParseError("bad timestamp '" + std::string(text) + "'");
  int day = cur.digits(2, "day");
  if (month < 1 || month > 12 || day < 1 || day > 31)
    throw ParseError("bad timestamp '" + std::string(text) + "': date out of range");

  if (!(cur.eat('T') || cur.eat(' ')))
    throw ParseError("bad timestamp '" + std::string(text) +
                     "': expected 'T' or ' ' before time");
  int hour = cur.digits(2, "hour");
  if (!cur.eat(':')) throw ParseError("bad timestamp '" + std::string(text) + "'");
  int minute = cur.digits(2, "minute");
  int second = 0;
  if (cur.eat(':')) second = cur.digits(2, "second");
  if (hour > 23 || minute > 59 || second > 60)
    throw ParseError("bad timestamp '" + std::string(text) + "': time out of range");
  if (cur.eat('.')) {  // fractional seconds floored away
    if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
      throw ParseError("bad timestamp '" + std::string(text) + "'");
    while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
      ++cur.pos;
  }

  std::int64_t offset = 0;
  if (!cur.done()) {
    char c = cur.peek();
    if (c == 'Z') {
      ++cur.pos;
    } else if (c == '+' || c == '-') {
      ++cur.pos;
      int oh = cur.digits(2, "offset hour");
      cur.eat(':');
      int om = cur.done() ? 0 : cur.digits(2, "offset minute");
      offset = (c == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    } else {
      throw ParseError("bad timestamp '" + std::string(text) +
                       "': trailing characters");
    }
  }
  if (!cur.done())
    throw ParseError("bad timestamp '" + std::string(text) + "': trailing characters");

  std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                      static_cast<unsigned>(day));
  return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

static void split(Seconds t, int& year, unsigned& month, unsigned& day, int& hour,
                  int& minute, int& second) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  civil_from_days(days, year, month, day);
  hour = static_cast<int>(rem / 3600);
  minute = static_cast<int>((rem % 3600) / 60);
  second = static_cast<int>(rem % 60);
}

std::string format_timestamp(Seconds t) {
  int year, hour, minute, second;
  unsigned month, day;
  split(t, year, month, day, hour, minute, second);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", year, month, day,
                hour, minute, second);
  return buf;
}

std::string format_timestamp_xes(Seconds t) {
  return format_timestamp(t) + ".000+00:00";
}

}  // namespace privlog
