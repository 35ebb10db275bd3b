#include "nest/world.hpp"

#include <algorithm>

namespace nest {

namespace {

bool legal_output(char cur, char weight, char leave, char arrive) {
  if (cur == 'e' && weight == 'l') return leave == 'e' && arrive == 'l';
  if (cur == 'e' && weight == 'h')
    return (leave == 'e' && arrive == 'h') || (leave == 'f' && arrive == 'l');
  if (cur == 'f' && weight == 'l')
    return (leave == 'f' && arrive == 'l') || (leave == 'e' && arrive == 'h');
  return leave == 'f' && arrive == 'h';  // (f,h)
}

Dir dir_between(Cell a, Cell b) {
  if (b.x == a.x && b.y == a.y + 1) return Dir::North;
  if (b.x == a.x + 1 && b.y == a.y) return Dir::East;
  if (b.x == a.x && b.y == a.y - 1) return Dir::South;
  if (b.x == a.x - 1 && b.y == a.y) return Dir::West;
  throw error("dir_between: cells not adjacent " + cell_str(a) + " " + cell_str(b));
}

}  // namespace

std::vector<Cell> l_route(Cell from, Cell to) {
  std::vector<Cell> route{from};
  Cell cur = from;
  while (cur.y != to.y) {
    cur = step(cur, to.y > cur.y ? Dir::North : Dir::South);
    route.push_back(cur);
  }
  while (cur.x != to.x) {
    cur = step(cur, to.x > cur.x ? Dir::East : Dir::West);
    route.push_back(cur);
  }
  return route;
}

World::World(Field field, Cell start, WorldConfig cfg)
    : field_(std::move(field)), cfg_(cfg) {
  pose_.pos = start;
  pose_.facing = Dir::North;
  pose_.heavy = false;
  total_bricks_ = field_.size();
}

bool World::sensed_full(Cell c) const {
  if (manhattan(c, pose_.pos) > kSensingRadius)
    throw controller_error("cell query outside sensing radius: " + cell_str(c));
  return field_.contains(c);
}

Observation World::observe() {
  charge_sense();
  Observation obs;
  obs.center = pose_.pos;
  for (int dy = -kSensingRadius; dy <= kSensingRadius; ++dy) {
    int w = kSensingRadius - std::abs(dy);
    for (int dx = -w; dx <= w; ++dx) {
      Cell c{pose_.pos.x + dx, pose_.pos.y + dy};
      if (!field_.contains(c)) continue;
      Observation::Seen s;
      s.offset = {dx, dy};
      s.marker = marker_ && *marker_ == c;
      s.disc = disc_ && disc_->contains(c);
      obs.marker_visible |= s.marker;
      obs.disc_visible |= s.disc;
      obs.full_cells.push_back(s);
    }
  }
  std::sort(obs.full_cells.begin(), obs.full_cells.end(),
            [](const auto& a, const auto& b) { return cell_before(a.offset, b.offset); });
  return obs;
}

void World::emit(TraceEvent ev) {
  ev.index = next_index_++;
  ev.before = pose_.pos;
  std::string line = format_event(ev);
  hash_.feed(line);
  if (sink_) sink_->on_line(line);
}

void World::move(Dir dir, char leave, char arrive) {
  char cur = field_.contains(pose_.pos) ? 'f' : 'e';
  char weight = pose_.heavy ? 'h' : 'l';
  if (!legal_output(cur, weight, leave, arrive))
    throw illegal_action(std::string("illegal move output (") + cur + "," + weight +
                         ") -> (" + leave + "," + arrive + ") at " + cell_str(pose_.pos));
  TraceEvent ev;
  ev.kind = EventKind::Move;
  ev.dir = dir;
  ev.leave = leave;
  ev.arrive = arrive;
  emit(ev);
  if (cur == 'f' && leave == 'e') field_.remove(pose_.pos);
  if (cur == 'e' && leave == 'f') {
    field_.add(pose_.pos);
    filled_since_mark_.push_back(pose_.pos);
  }
  pose_.pos = step(pose_.pos, dir);
  pose_.facing = dir;  // orientation follows the last step
  pose_.heavy = arrive == 'h';
  ++steps_;
  if (field_.size() + (pose_.heavy ? 1 : 0) != total_bricks_)
    throw controller_error("brick conservation broken");
}

void World::transit(Dir dir) {
  char cur = field_.contains(pose_.pos) ? 'f' : 'e';
  move(dir, cur, pose_.heavy ? 'h' : 'l');
}

void World::turn(Turn t) {
  TraceEvent ev;
  ev.kind = EventKind::Turn;
  ev.turn = t;
  emit(ev);
  pose_.facing = rotated(pose_.facing, t);
}

void World::face(Dir d) {
  int diff = (int(d) - int(pose_.facing)) & 3;
  if (diff == 1) turn(Turn::Right);
  else if (diff == 3) turn(Turn::Left);
  else if (diff == 2) {
    turn(Turn::Left);
    turn(Turn::Left);
  }
}

void World::bring(Cell from) {
  if (pose_.heavy) throw precondition_error("bring: robot is carrying a brick");
  if (!field_.contains(from)) throw precondition_error("bring: source empty " + cell_str(from));
  if (manhattan(from, pose_.pos) > kSensingRadius)
    throw precondition_error("bring: source out of sensing range");
  if (from == pose_.pos) throw precondition_error("bring: source is the current cell");
  Dir orig = pose_.facing;
  std::vector<Cell> route = l_route(pose_.pos, from);
  for (size_t i = 1; i < route.size(); ++i) transit(dir_between(route[i - 1], route[i]));
  // Walk back; the first move picks the brick.
  for (size_t i = route.size() - 1; i-- > 0;) {
    Dir d = dir_between(pose_.pos, route[i]);
    if (pose_.pos == from)
      move(d, 'e', 'h');
    else
      transit(d);
  }
  face(orig);
}

void World::place(Cell to) {
  if (!pose_.heavy) throw precondition_error("place: robot has no brick");
  if (field_.contains(to)) throw precondition_error("place: target full " + cell_str(to));
  if (manhattan(to, pose_.pos) > kSensingRadius)
    throw precondition_error("place: target out of sensing range");
  if (to == pose_.pos) throw precondition_error("place: target is the current cell");
  Dir orig = pose_.facing;
  std::vector<Cell> route = l_route(pose_.pos, to);
  for (size_t i = 1; i < route.size(); ++i) transit(dir_between(route[i - 1], route[i]));
  for (size_t i = route.size() - 1; i-- > 0;) {
    Dir d = dir_between(pose_.pos, route[i]);
    if (pose_.pos == to)
      move(d, 'f', 'l');  // drop on the way out
    else
      transit(d);
  }
  face(orig);
}

void World::walk_to(Cell target) {
  std::vector<Cell> route = l_route(pose_.pos, target);
  for (size_t i = 1; i < route.size(); ++i) transit(dir_between(route[i - 1], route[i]));
}

Dir World::direction_away() const {
  if (!disc_) throw precondition_error("direction_away: no disc ledger");
  int64_t here = distance_to_rough_disc(pose_.pos, *disc_);
  if (here == 0) throw precondition_error("direction_away: robot inside the disc");
  // Radially away: the opposites of the distance-decreasing directions,
  // tried in N, E, S, W priority. A lone axis gives the straight-away
  // direction; a diagonal position gives a two-way tie.
  int64_t next[4];
  for (int d = 0; d < 4; ++d)
    next[d] = distance_to_rough_disc(step(pose_.pos, Dir(d)), *disc_);
  for (int d = 0; d < 4; ++d) {
    int opp = (d + 2) & 3;
    if (next[opp] == here - 1 && next[d] == here + 1) return Dir(d);
  }
  for (int d = 0; d < 4; ++d)
    if (next[d] == here + 1) return Dir(d);
  throw controller_error("direction_away: no strictly increasing direction");
}

void World::set_marker(Cell c) {
  if (!field_.contains(c)) throw precondition_error("set_marker: cell empty");
  marker_ = c;
  note("marker", std::to_string(c.x) + " " + std::to_string(c.y));
}

void World::clear_marker() {
  marker_.reset();
  note("marker-clear");
}

void World::seed_disc(Cell c) {
  if (!field_.contains(c)) throw precondition_error("seed_disc: cell empty");
  disc_ = rough_disc_cells(c, 1);
  note("disc-seed", std::to_string(c.x) + " " + std::to_string(c.y));
}

void World::grow_disc(Cell e) {
  if (!disc_) throw precondition_error("grow_disc: no disc ledger");
  DiscLayout next = rough_disc_cells(disc_->center, disc_->size + 1);
  Cell expected = next.cells.back();
  if (next.prefix.empty()) {
    // The disc just completed a full radius; the added cell is the one
    // missing from the previous layout.
    for (Cell c : next.cells)
      if (!disc_->contains(c)) {
        expected = c;
        break;
      }
  }
  if (e != expected)
    throw precondition_error("grow_disc: " + cell_str(e) + " is not the extension cell " +
                             cell_str(expected));
  if (!field_.contains(e)) throw precondition_error("grow_disc: extension cell empty");
  disc_ = std::move(next);
  note("disc-grow", std::to_string(e.x) + " " + std::to_string(e.y));
}

void World::note(const std::string& tag, const std::string& payload) {
  TraceEvent ev;
  ev.kind = EventKind::Note;
  ev.tag = tag;
  ev.payload = payload;
  emit(ev);
}

}  // namespace nest
