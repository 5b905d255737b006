"""HTTP annotation service: task queue, durable submission log, JSONL export.

Assignments are pre-built (each style page and each graded verse goes to
exactly two distinct annotators, round-robin over the roster) and served
oldest-first.  Annotator-facing payloads are blind: they carry lines and an
assignment id only, never verse/artist identifiers or the correct choice.
Submissions are appended to a JSONL log and fsynced before the ack is sent;
restarting the service on the same log restores all submitted state.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .annotation import (ANNOTATORS_PER_ITEM, LABEL_VALUES, StyleMatchPage,
                         eligible_lines)
from .corpus import Verse

STYLE = "style"
GRADING_TASKS = ("fluency", "coherence")


class RosterError(ValueError):
    pass


class UnknownAssignmentError(KeyError):
    pass


@dataclass
class Assignment:
    assignment_id: str
    annotator_id: str
    kind: str                      # "style" | "fluency" | "coherence"
    item_id: str                   # page_id or verse_id
    page: StyleMatchPage | None = None
    verse: Verse | None = None
    status: str = "pending"        # "pending" | "submitted"
    ack: dict | None = None

    def blind_payload(self) -> dict:
        """What the annotator may see; ids and provenance stay server-side."""
        if self.kind == STYLE:
            assert self.page is not None
            return {
                "assignment_id": self.assignment_id,
                "task": STYLE,
                "eval_lines": list(self.page.eval_lines),
                "choices": [list(c.lines) for c in self.page.choices],
            }
        assert self.verse is not None
        return {
            "assignment_id": self.assignment_id,
            "task": self.kind,
            "lines": [" ".join(line) for line in self.verse.lines],
            "eligible_lines": eligible_lines(self.verse, self.kind),
        }


class AnnotationStore:
    """Append-only JSONL log; every append is flushed and fsynced."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.records: list[dict] = []
        if self.path.exists():
            with open(self.path, encoding="utf-8") as f:
                self.records = [json.loads(line) for line in f if line.strip()]

    def append(self, record: dict) -> None:
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record, sort_keys=True) + "\n")
                f.flush()
                os.fsync(f.fileno())
            self.records.append(record)

    def snapshot(self) -> list[dict]:
        with self._lock:
            return list(self.records)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _assignment_id(kind: str, item_id: str, annotator_id: str) -> str:
    """Opaque, restart-stable id; annotators must not see item identifiers."""
    digest = hashlib.sha256(f"{kind}|{item_id}|{annotator_id}".encode()).hexdigest()
    return f"t{digest[:16]}"


class TaskBook:
    """Assignment table plus submission state; all mutation under one lock."""

    def __init__(self, pages: list, grading_verses: list[Verse],
                 roster: list[str], store: AnnotationStore):
        if len(set(roster)) < ANNOTATORS_PER_ITEM:
            raise RosterError(
                f"roster needs >= {ANNOTATORS_PER_ITEM} distinct annotators, "
                f"got {sorted(set(roster))}")
        self.roster = list(dict.fromkeys(roster))  # stable order, deduped
        self.store = store
        self._lock = threading.Lock()
        self.assignments: dict[str, Assignment] = {}
        self._order: list[str] = []

        items: list[tuple[str, str, Any]] = []
        for page in pages:
            items.append((STYLE, page.page_id, page))
        for verse in grading_verses:
            for kind in GRADING_TASKS:
                items.append((kind, verse.verse_id, verse))
        k = len(self.roster)
        for i, (kind, item_id, obj) in enumerate(items):
            pair = (self.roster[(2 * i) % k], self.roster[(2 * i + 1) % k])
            for who in pair:
                aid = _assignment_id(kind, item_id, who)
                asg = Assignment(assignment_id=aid, annotator_id=who,
                                 kind=kind, item_id=item_id)
                if kind == STYLE:
                    asg.page = obj
                else:
                    asg.verse = obj
                self.assignments[aid] = asg
                self._order.append(aid)
        self._replay(store.records)

    def _replay(self, records: list[dict]) -> None:
        for rec in records:
            asg = self.assignments.get(rec["assignment_id"])
            if asg is None:
                raise UnknownAssignmentError(
                    f"log references unknown assignment {rec['assignment_id']!r}")
            asg.status = "submitted"
            asg.ack = rec["ack"]

    def next_task(self, annotator_id: str) -> Assignment | None:
        if annotator_id not in self.roster:
            raise RosterError(f"unknown annotator {annotator_id!r}")
        with self._lock:
            for aid in self._order:
                asg = self.assignments[aid]
                if asg.annotator_id == annotator_id and asg.status == "pending":
                    return asg
            return None

    def submit(self, assignment_id: str, annotator_id: str,
               payload: dict) -> tuple[dict, bool]:
        """Validate, persist, ack.  Returns (ack, is_duplicate)."""
        if annotator_id not in self.roster:
            raise RosterError(f"unknown annotator {annotator_id!r}")
        with self._lock:
            asg = self.assignments.get(assignment_id)
            if asg is None:
                raise UnknownAssignmentError(
                    f"unknown assignment {assignment_id!r}")
            if asg.annotator_id != annotator_id:
                raise PermissionError(
                    f"assignment {assignment_id!r} is not owned by "
                    f"{annotator_id!r}")
            if asg.status == "submitted":
                assert asg.ack is not None
                return asg.ack, True
            body = self._validate(asg, payload)
            record = {
                "assignment_id": assignment_id,
                "annotator_id": annotator_id,
                "task": asg.kind,
                "item_id": asg.item_id,
                "timestamp": _utc_now(),
                "body": body,
            }
            record["ack"] = {
                "ok": True,
                "assignment_id": assignment_id,
                "ack_id": len(self.store.records),
            }
            # fsync happens inside append; only after it returns is the
            # assignment marked submitted and the ack released.
            self.store.append(record)
            asg.status = "submitted"
            asg.ack = record["ack"]
            return record["ack"], False

    @staticmethod
    def _validate(asg: Assignment, payload: dict) -> dict:
        if asg.kind == STYLE:
            idx = payload.get("chosen_index")
            n = len(asg.page.choices)
            if not isinstance(idx, int) or not 0 <= idx < n:
                raise ValueError(
                    f"chosen_index must be an integer in [0, {n})")
            return {"chosen_index": idx}
        raw = payload.get("labels")
        if not isinstance(raw, dict):
            raise ValueError("labels must be a {line_index: label} object")
        labels: dict[int, str] = {}
        for key, lab in raw.items():
            try:
                i = int(key)
            except (TypeError, ValueError):
                raise ValueError(f"bad line index {key!r}") from None
            if lab not in LABEL_VALUES:
                raise ValueError(
                    f"label for line {i} must be one of "
                    f"{sorted(LABEL_VALUES)}, got {lab!r}")
            labels[i] = lab
        need = eligible_lines(asg.verse, asg.kind)
        missing = [i for i in need if i not in labels]
        extra = sorted(set(labels) - set(need))
        if missing or extra:
            raise ValueError(
                f"labels must cover exactly lines {need}; "
                f"missing {missing}, unexpected {extra}")
        return {"labels": {str(i): labels[i] for i in need}}

    def progress(self) -> dict:
        with self._lock:
            by: dict[str, dict[str, int]] = {
                who: {"total": 0, "submitted": 0} for who in self.roster}
            done = 0
            for asg in self.assignments.values():
                by[asg.annotator_id]["total"] += 1
                if asg.status == "submitted":
                    by[asg.annotator_id]["submitted"] += 1
                    done += 1
            total = len(self.assignments)
            return {"total": total, "submitted": done,
                    "pending": total - done, "complete": done == total,
                    "by_annotator": by}


def export_records(log_records: list[dict], task: str | None = None) -> list[dict]:
    """Expand the submission log into per-line export records.

    Style submissions export one record each; fluency/coherence submissions
    export one record per labeled line.  Order is submission order, then
    line index.
    """
    out: list[dict] = []
    for rec in log_records:
        kind = rec["task"]
        if task is not None and kind != task:
            continue
        base = {"task": kind, "annotator_id": rec["annotator_id"],
                "timestamp": rec["timestamp"]}
        if kind == STYLE:
            out.append({**base, "page_id": rec["item_id"],
                        "chosen_index": rec["body"]["chosen_index"]})
        else:
            labels = rec["body"]["labels"]
            for key in sorted(labels, key=int):
                out.append({**base, "verse_id": rec["item_id"],
                            "line_index": int(key), "label": labels[key]})
    return out


def export_jsonl(log_records: list[dict], task: str | None = None) -> str:
    lines = [json.dumps(r, sort_keys=True)
             for r in export_records(log_records, task)]
    return "".join(line + "\n" for line in lines)


def create_app(pages: list, grading_verses: list[Verse], roster: list[str],
               store_path: str | Path, admin_token: str):
    """FastAPI app factory; state lives in the returned app instance."""
    store = AnnotationStore(store_path)
    book = TaskBook(pages, grading_verses, roster, store)
    app = FastAPI(title="verseval annotation service")
    app.state.book = book
    app.state.store = store

    def error(status: int, message: str, **extra) -> JSONResponse:
        return JSONResponse({"error": message, **extra}, status_code=status)

    @app.get("/api/task")
    def get_task(annotator: str = ""):
        try:
            asg = book.next_task(annotator)
        except RosterError as exc:
            return error(401, str(exc))
        return {"task": None if asg is None else asg.blind_payload()}

    @app.post("/api/submit")
    async def post_submit(request: Request):
        try:
            body = await request.json()
        except ValueError:
            return error(400, "body must be JSON")
        aid = body.get("assignment_id")
        who = body.get("annotator")
        if not isinstance(aid, str) or not isinstance(who, str):
            return error(400, "assignment_id and annotator are required")
        try:
            ack, duplicate = book.submit(aid, who, body)
        except RosterError as exc:
            return error(401, str(exc))
        except UnknownAssignmentError as exc:
            return error(404, str(exc.args[0]))
        except PermissionError as exc:
            return error(403, str(exc))
        except ValueError as exc:
            return error(422, str(exc))
        return {**ack, "duplicate": duplicate}

    @app.get("/api/progress")
    def get_progress():
        return book.progress()

    @app.get("/api/export")
    def get_export(request: Request, task: str | None = None,
                   token: str = ""):
        supplied = token or request.headers.get("x-admin-token", "")
        if supplied != admin_token:
            return error(403, "admin token required")
        return PlainTextResponse(export_jsonl(store.snapshot(), task),
                                 media_type="application/x-ndjson")

    return app
