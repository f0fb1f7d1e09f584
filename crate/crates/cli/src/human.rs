//! Terminal player: lists legal moves on finite spaces and reads moves typed
//! as text otherwise. Illegal moves are rejected and the prompt repeats.

use std::io::{BufRead, Write};
use std::sync::Mutex;

use topogame::finsolve::{all_replies, FinGame};
use topogame::games::{check_move, inning, to_move, Game, Move, Strategy};
use topogame::space::{CoverFamily, OpenSet, PointSet};
use topogame::{Error, Result};

const SHOWN: usize = 8;

pub struct Human {
    input: Mutex<Box<dyn BufRead + Send>>,
    output: Mutex<Box<dyn Write + Send>>,
}

impl Human {
    pub fn new(input: Box<dyn BufRead + Send>, output: Box<dyn Write + Send>) -> Human {
        Human { input: Mutex::new(input), output: Mutex::new(output) }
    }

    pub fn stdio() -> Human {
        Human::new(Box::new(std::io::BufReader::new(std::io::stdin())), Box::new(std::io::stderr()))
    }
}

pub fn describe(m: &Move) -> String {
    match m {
        Move::Cover(f) => {
            let shown: Vec<String> = f.prefix(SHOWN).iter().map(|u| u.to_string()).collect();
            let more = if f.len().is_none_or(|n| n > SHOWN) { ", …" } else { "" };
            format!("family {} = {{{}{more}}}", f.label(), shown.join(", "))
        }
        Move::Dense(d) => {
            let more = if d.listed_points().is_none_or(|l| l.len() > SHOWN) { ", …" } else { "" };
            format!("dense set {} = {:?}{more}", d.label(), d.prefix(SHOWN))
        }
        Move::Pick(i) => format!("pick {i}"),
        Move::PickMany(is) => format!("picks {is:?}"),
        Move::Point(p) => format!("point {p}"),
        Move::Points(ps) => format!("points {ps:?}"),
        Move::Open(u) => format!("open {u}"),
    }
}

fn numbers(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("{t:?} is not an index")))
        .collect()
}

/// `point 3`, `points 1,2`, `open 0,4`, `pick 2`, `picks 0,1`,
/// `cover 1,2;3` (members separated by `;`, each a list of base indices),
/// `dense 0,2,4`.
pub fn parse_move(line: &str) -> std::result::Result<Move, String> {
    let line = line.trim();
    let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let one = |r: &str| -> std::result::Result<usize, String> {
        r.trim().parse().map_err(|_| format!("{:?} is not an index", r.trim()))
    };
    match word {
        "point" => Ok(Move::Point(one(rest)?)),
        "points" => Ok(Move::Points(numbers(rest)?)),
        "open" => Ok(Move::Open(OpenSet::new(numbers(rest)?))),
        "pick" => Ok(Move::Pick(one(rest)?)),
        "picks" => Ok(Move::PickMany(numbers(rest)?)),
        "cover" => {
            let members = rest.split(';').map(|m| numbers(m).map(OpenSet::new)).collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(Move::Cover(CoverFamily::listed("typed", members)))
        }
        "dense" => {
            let pts = numbers(rest)?;
            if pts.is_empty() {
                return Err("a dense set needs points".into());
            }
            Ok(Move::Dense(PointSet::listed("typed", pts)))
        }
        _ => Err(format!("unknown move {word:?}")),
    }
}

/// Legal moves offered on finite spaces.
fn menu(game: &Game, history: &[Move]) -> Vec<Move> {
    if !game.space.is_finite() {
        return vec![];
    }
    if history.len() % 2 == 0 {
        FinGame::from_space(&game.space, game.kind)
            .and_then(|g| Ok(g.i_moves()?.iter().map(|m| m.to_move(&game.space)).collect()))
            .unwrap_or_default()
    } else {
        all_replies(game, history).into_iter().map(|r| r.0).collect()
    }
}

impl Strategy for Human {
    fn label(&self) -> String {
        "human".into()
    }

    fn next(&self, game: &Game, history: &[Move]) -> Result<Move> {
        let mut out = self.output.lock().unwrap();
        let mut input = self.input.lock().unwrap();
        let player = to_move(history);
        let options = menu(game, history);
        let _ = writeln!(out, "inning {} of {} on {}, player {player} to move", inning(history), game.kind, game.space.label());
        if history.len() % 2 == 1 {
            let _ = writeln!(out, "  I played {}", describe(history.last().unwrap()));
        }
        for (i, m) in options.iter().enumerate() {
            let _ = writeln!(out, "  [{i}] {}", describe(m));
        }
        loop {
            let _ = write!(out, "{}> ", if options.is_empty() { "move" } else { "number or move" });
            let _ = out.flush();
            let mut line = String::new();
            let read = input.read_line(&mut line).map_err(|e| Error::StrategyFailure(e.to_string()))?;
            if read == 0 {
                return Err(Error::StrategyFailure("input ended".into()));
            }
            let parsed = match line.trim().parse::<usize>() {
                Ok(i) if !options.is_empty() => {
                    options.get(i).cloned().ok_or_else(|| format!("choose 0..{}", options.len()))
                }
                _ => parse_move(&line),
            };
            match parsed.and_then(|m| check_move(game, history, &m).map(|_| m)) {
                Ok(m) => return Ok(m),
                Err(why) => {
                    let _ = writeln!(out, "illegal: {why}");
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use topogame::games::GameKind;
    use topogame::space::discrete;

    #[test]
    fn typed_moves() {
        assert!(matches!(parse_move("point 3").unwrap(), Move::Point(3)));
        assert!(matches!(parse_move("open 0, 2").unwrap(), Move::Open(u) if u.parts() == [0, 2]));
        let Move::Cover(f) = parse_move("cover 0;1").unwrap() else { panic!() };
        assert_eq!(f.len(), Some(2));
        assert!(parse_move("jump 2").is_err());
        assert!(parse_move("dense").is_err());
    }

    #[test]
    fn reprompts_after_an_illegal_move() {
        let input = b"point 7\n1\n".to_vec();
        let h = Human::new(Box::new(std::io::Cursor::new(input)), Box::new(std::io::sink()));
        let g = Game::new(GameKind::OpenPicking, discrete(2));
        let m = h.next(&g, &[]).unwrap();
        assert!(matches!(m, Move::Point(1)));
        let h = Human::new(Box::new(std::io::Cursor::new(Vec::new())), Box::new(std::io::sink()));
        assert!(h.next(&g, &[]).is_err());
    }
}
